from apps.predictor.controllers.predictor import router as predictor_router

__all__ = ["predictor_router"]
