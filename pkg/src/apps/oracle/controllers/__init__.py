from apps.oracle.controllers.oracle import router as oracle_router

__all__ = ["oracle_router"]
