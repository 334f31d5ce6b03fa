class TopocodeError(ValueError):
    """Error carrying a short machine-readable code such as 'not-a-tree'."""

    def __init__(self, code: str, message: str = ""):
        self.code = code
        super().__init__(f"{code}: {message}" if message else code)
