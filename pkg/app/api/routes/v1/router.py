from fastapi import APIRouter
from app.api.routes.v1.health.router import router as health_router
from app.api.routes.v1.evaluate.router import router as evaluate_router
from app.api.routes.v1.products.router import router as products_router
from app.api.routes.v1.verify.router import router as verify_router

router = APIRouter()

# All v1 routers
router.include_router(health_router)
router.include_router(evaluate_router)
router.include_router(products_router)
router.include_router(verify_router)
