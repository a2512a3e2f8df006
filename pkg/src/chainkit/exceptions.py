class ChainkitError(Exception):
    """Base class for errors raised by chainkit."""


class InvalidParams(ChainkitError, ValueError):
    pass


class ZeroBaseline(ChainkitError, ValueError):
    """The chain's endpoints coincide, so its stretch factor is undefined."""


class ChainFileError(ChainkitError, ValueError):
    pass
