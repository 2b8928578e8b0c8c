"""Exception hierarchy shared by every genperm module."""


class GenPermError(Exception):
    """Base class; the CLI maps it to exit status 1."""


class ConfigError(GenPermError):
    pass


class GraphError(GenPermError):
    pass


class GraphFormatError(GraphError):
    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class CoverError(GenPermError):
    pass


class CoverFormatError(CoverError):
    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class MetricError(GenPermError):
    pass


class DetectionError(GenPermError):
    pass


class ExperimentError(GenPermError):
    pass


class SynthError(GenPermError):
    pass
