"""
Конфигурация приложения GRIDSTORE
"""
from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Настройки приложения"""

    # Основные настройки
    app_name: str = "GRIDSTORE"
    app_version: str = "0.1.0"
    log_level: str = "INFO"

    # Оракул (перебор экспоненциальный, поэтому ограничиваем размер)
    oracle_max_loads: int = 12
    characterize_max_cells: int = 9

    # Бенчмарк
    bench_seeds_per_size: int = 25
    bench_seed_base: int = 0
    bench_workers: int = 1
    online_bench_budget: int = 1

    # CORS для HTTP-интерфейса
    cors_origins: list[str] = [
        "http://localhost:3000",
        "http://localhost:8099",
    ]

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )


@lru_cache()
def get_settings() -> Settings:
    """Получить настройки (кэшированные)"""
    return Settings()


settings = get_settings()
