class ArtifactError(Exception):
    """Raised for any invalid input or failed internal verification."""
