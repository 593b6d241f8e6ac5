from apps.transport.schemas.mkl_filter import MklFilter

__all__ = ["MklFilter"]
