class GitqError(Exception):
    """Domain error: bad input data or a violated precondition."""
