class DehnlabError(Exception):
    pass


class InvalidWordError(DehnlabError, ValueError):
    pass


class NotALoopError(DehnlabError, ValueError):
    pass


class DomainError(DehnlabError, ValueError):
    pass


class ConfigError(DehnlabError, ValueError):
    pass


class CertificateParseError(DehnlabError, ValueError):
    pass


class UnsupportedGroupError(DehnlabError, KeyError):
    def __str__(self):
        # KeyError quotes its argument, which makes messages hard to read
        return str(self.args[0]) if self.args else ""


class CapExceededError(DehnlabError, RuntimeError):
    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap


class BudgetExceededError(DehnlabError, MemoryError):
    pass


class CoordinateOverflowError(DehnlabError, OverflowError):
    pass


class BridgeStateError(DehnlabError, RuntimeError):
    pass


class SamplerExhaustedError(DehnlabError, RuntimeError):
    def __init__(self, message, attempts=0):
        super().__init__(message)
        self.attempts = attempts


class PartialResultsError(DehnlabError, RuntimeError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
