from apps.transport.controllers.transport import router as transport_router

__all__ = ["transport_router"]
