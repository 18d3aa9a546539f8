"""Exception hierarchy shared by every eccsim module."""


class EccSimError(Exception):
    """Base class for all eccsim errors."""


class InvalidParameterError(EccSimError, ValueError):
    pass


class EncodeError(EccSimError, ValueError):
    pass


class DecodeError(EccSimError, ValueError):
    pass


class ChannelError(EccSimError, ValueError):
    pass


class NotBracketedError(EccSimError):
    """Target BER is not crossed by one of the curves."""

    def __init__(self, curve_label, target_ber):
        self.curve_label = curve_label
        self.target_ber = target_ber
        super().__init__(
            f"target BER {target_ber:g} not bracketed by curve '{curve_label}'"
        )


class ConfigError(EccSimError, ValueError):
    """Bad configuration; carries the offending key and line when known."""

    def __init__(self, message, key=None, line=None):
        self.key = key
        self.line = line
        where = ""
        if key is not None:
            where += f"{key}: "
        if line is not None:
            where = f"line {line}: " + where
        super().__init__(where + message)


class ComparisonError(EccSimError):
    pass
