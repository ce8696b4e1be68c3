# app/main.py
import uvicorn

from app.core.application import create_app
from app.core.config import get_settings

app = create_app()


def serve() -> None:
    """Run the API with host, port and log level from settings."""
    settings = get_settings()
    uvicorn.run(
        "app.main:app",
        host=settings.HOST,
        port=settings.PORT,
        reload=bool(settings.DEBUG),
        log_level=settings.LOG_LEVEL.lower(),
    )


if __name__ == "__main__":
    serve()
