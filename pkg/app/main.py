"""
GRIDSTORE - FastAPI Application
"""
import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request, status
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from app.api import api_router
from app.core.config import settings
from app.core.exceptions import StorageError
from app.core.logging import setup_logging

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """
    Lifecycle events: startup and shutdown
    """
    setup_logging(settings.log_level)
    logger.info("%s %s запущен", settings.app_name, settings.app_version)
    yield


# Создаём приложение
app = FastAPI(
    title=settings.app_name,
    description="""
    📦 **GRIDSTORE** — планирование хранения и выдачи грузов на сетке с одним открытым рядом.

    ## Возможности API

    * 🗺 **Планы** — офлайн, с lookahead, онлайн и базовый алгоритм
    * ✅ **Проверка** — исполнение плана с проверкой каждого пути
    * 🔎 **Оракул** — существует ли план без перестановок
    * 📊 **Бенчмарк** — сравнение алгоритмов на случайных экземплярах
    """,
    version=settings.app_version,
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.cors_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(StorageError)
async def storage_error_handler(request: Request, exc: StorageError):
    """
    Ошибки предметной области — 422 с машиночитаемой записью
    """
    logger.info("%s %s: %s", request.method, request.url.path, exc)
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={"detail": exc.to_dict()},
    )


# Подключаем роутеры
app.include_router(api_router, prefix="/api/v1")


@app.get("/", tags=["root"])
async def root():
    """
    Корневой endpoint — информация о сервисе
    """
    return {
        "service": settings.app_name,
        "version": settings.app_version,
        "docs": "/docs",
        "redoc": "/redoc",
    }


@app.get("/health", tags=["health"])
async def health_check():
    """
    Health check endpoint
    """
    return {"status": "healthy"}
