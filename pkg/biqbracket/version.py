# These version placeholders will be replaced by poetry-dynamic-versioning during `poetry build`.
__version__ = "0.1.0"
__version_tuple__ = (0, 1, 0)
