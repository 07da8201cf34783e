import nox
from nox.sessions import Session


PYTHON_VERSIONS = ('3.14', '3.13', '3.12', '3.11')


def _sync(session: Session, *extra_args: str) -> None:
    session.install('uv')
    session.run(
        'uv',
        'sync',
        *extra_args,
        '--python',
        session.python,
        env={'UV_PROJECT_ENVIRONMENT': session.virtualenv.location},
    )


@nox.session(python=PYTHON_VERSIONS)
def tests(session: Session):
    _sync(session, '--all-extras')
    session.run('python', '-m', 'coverage', 'run', '--context', f'py{session.python}')


@nox.session(python=PYTHON_VERSIONS[-1])
def acceptance(session: Session):
    """
    Run the Monte Carlo acceptance experiments with their full replicate counts.
    """
    _sync(session)
    session.run('sparse_penalized_dev', 'acceptance', '--out', '.acceptance')
