"""Exception types shared by every module of the toolkit."""


class InputError(ValueError):
    """Raised when a caller violates a documented precondition.

    ``tag`` is a short machine-checkable label (e.g. "shape", "degenerate",
    "precondition"); the full message is ``"tag: detail"``.
    """

    def __init__(self, tag: str, detail: str = ""):
        self.tag = tag
        self.detail = detail
        super().__init__(f"{tag}: {detail}" if detail else tag)


class InternalError(RuntimeError):
    """Raised when an internal consistency guarantee fails.

    Distinguishes implementation bugs (e.g. a completeness bound exceeded
    even though local tests promised a solution) from bad input.
    """

    def __init__(self, tag: str, detail: str = ""):
        self.tag = tag
        self.detail = detail
        super().__init__(f"internal: {tag}" + (f" ({detail})" if detail else ""))
