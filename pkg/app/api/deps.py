"""
Зависимости для API endpoints
"""
from fastapi import Depends, HTTPException, status

from app.core.config import Settings, get_settings
from app.core.exceptions import InputError
from app.models.instance import Instance
from app.schemas.instance import InstanceFile


def load_instance(data: InstanceFile) -> Instance:
    """
    Преобразовать тело запроса в доменный экземпляр
    """
    try:
        return data.to_domain()
    except InputError as exc:
        raise HTTPException(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail=exc.to_dict(),
        )


def check_characterize_size(
    rows: int,
    cols: int,
    settings: Settings = Depends(get_settings),
) -> tuple[int, int]:
    """
    Полный перебор разрешён только на маленьких сетках
    """
    if rows * cols > settings.characterize_max_cells:
        raise HTTPException(
            status_code=status.HTTP_400_BAD_REQUEST,
            detail=f"Сетка {rows}x{cols} слишком велика для полного перебора "
                   f"(не больше {settings.characterize_max_cells} клеток)",
        )
    return rows, cols
