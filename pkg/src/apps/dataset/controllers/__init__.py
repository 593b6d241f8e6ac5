from apps.dataset.controllers.dataset import router as dataset_router

__all__ = ["dataset_router"]
