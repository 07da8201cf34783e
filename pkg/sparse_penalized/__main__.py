"""
    Allow sparse_penalized to be executable
    through `python -m sparse_penalized`.
"""

from sparse_penalized.cli_app import main


if __name__ == '__main__':
    main()
