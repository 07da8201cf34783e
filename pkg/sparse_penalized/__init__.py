"""
    sparse_penalized
    Sparse penalized likelihood: SCAD/LASSO thresholding, LQA solver, GCV tuning,
    Cox partial likelihood, covariance selection and q-class losses
"""

# See https://packaging.python.org/en/latest/specifications/version-specifiers/
__version__ = '0.1.0'
__author__ = 'Jens Diemer <github@jensdiemer.de>'
