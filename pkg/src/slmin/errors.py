"""Exception taxonomy shared by the library and the CLI exit codes."""


class SlminError(Exception):
    exit_code = 1


class DomainError(SlminError, ValueError):
    """Input violates a precondition or a theorem hypothesis."""

    exit_code = 2


class HypothesisError(DomainError):
    """A lemma or theorem hypothesis does not hold for the requested instance."""


class ResourceLimitError(SlminError):
    """A configured effort bound would be exceeded."""

    exit_code = 3

    def __init__(self, message, bound_name=None, bound=None):
        super().__init__(message)
        self.bound_name = bound_name
        self.bound = bound


class FactorizationIncomplete(ResourceLimitError):
    def __init__(self, n, factors, cofactor):
        super().__init__(
            f"factorization of {n} gave up with unfactored cofactor {cofactor}",
            bound_name="pollard_rho_iterations",
        )
        self.n = n
        self.factors = factors
        self.cofactor = cofactor


class EquivalenceFault(SlminError):
    """Two sides of a proven equivalence disagreed: an implementation bug."""

    exit_code = 4

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record
