class SparsePenalizedBaseException(Exception):
    """Base class for all exceptions raised by sparse_penalized."""


class DomainError(SparsePenalizedBaseException, ValueError):
    """A value lies outside the domain of a penalty or loss function."""


class ContractError(SparsePenalizedBaseException, ValueError):
    """Inputs violate an operation's preconditions (shapes, labels, sizes)."""


class InvalidPenaltySpec(ContractError):
    pass


class NoFailuresError(ContractError):
    pass


class InvalidGeneratorParams(ContractError):
    def __init__(self, *, field: str, error_msg: str):
        self.field = field
        self.error_msg = error_msg
        super().__init__(f'{field}: {error_msg}')


class SolverError(SparsePenalizedBaseException):
    """The penalized likelihood could not be maximized."""


class SingularMatrixError(SolverError):
    pass


class CovarianceEstimationError(SparsePenalizedBaseException):
    def __init__(self, *, row: int, error_msg: str):
        self.row = row
        self.error_msg = error_msg
        super().__init__(f'Cholesky row {row}: {error_msg}')
