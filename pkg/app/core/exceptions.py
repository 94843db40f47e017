"""
Исключения предметной области.

Каждое исключение несёт машиночитаемый `code` (имя класса) и словарь
`context`; `to_dict()` используется и CLI, и HTTP-обработчиком ошибок.
"""
from typing import Any


class StorageError(Exception):
    """Базовое исключение GRIDSTORE"""

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = context

    @property
    def code(self) -> str:
        return type(self).__name__

    def to_dict(self) -> dict[str, Any]:
        record: dict[str, Any] = {"error": self.code, "message": self.message}
        for key, value in self.context.items():
            record[key] = _jsonable(value)
        return record

    def __str__(self) -> str:
        if not self.context:
            return self.message
        details = ", ".join(f"{k}={v}" for k, v in self.context.items())
        return f"{self.message} ({details})"


def _jsonable(value: Any) -> Any:
    if isinstance(value, tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, list):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value
    return value


# ===== ВХОДНЫЕ ДАННЫЕ =====

class InputError(StorageError):
    """Некорректные входные данные"""


class InvalidGrid(InputError):
    pass


class InvalidInstance(InputError):
    pass


class InvalidArrangement(InputError):
    pass


class LabelMismatch(InputError):
    pass


# ===== НАРУШЕНИЯ ДЕЙСТВИЙ =====

class ActionViolation(StorageError):
    """Действие нельзя выполнить в текущем состоянии склада"""

    def __init__(self, message: str, path_index: int, **context: Any):
        super().__init__(message, path_index=path_index, **context)
        self.path_index = path_index

    def at_action(self, action_index: int) -> "ActionViolation":
        """Дописать номер действия в плане (используется при исполнении плана)"""
        self.context["action_index"] = action_index
        return self


class OutOfBounds(ActionViolation):
    pass


class NotAdjacentStep(ActionViolation):
    pass


class CellOccupied(ActionViolation):
    pass


class WrongEndpoint(ActionViolation):
    pass


class LoadNotPresent(ActionViolation):
    pass


class LoadAlreadyPresent(ActionViolation):
    pass


# ===== НАРУШЕНИЯ ПЛАНА =====

class PlanViolation(StorageError):
    """План не соответствует последовательностям прибытия/отправления"""


class OrderViolation(PlanViolation):
    pass


class IncompletePlan(PlanViolation):
    pass


# ===== ПЛАНИРОВАНИЕ =====

class PlanningError(StorageError):
    """Планировщик не может построить план для данного входа"""


class HeightOverflow(PlanningError):
    pass


class TooManyLoads(PlanningError):
    pass


class NarrowGrid(PlanningError):
    pass


class NoPath(PlanningError):
    pass


class TooDense(PlanningError):
    pass


class ShapeError(PlanningError):
    pass


class CountMismatch(PlanningError):
    pass


class TooNarrow(PlanningError):
    pass


class CapacityExceeded(PlanningError):
    pass


class UnknownLoad(PlanningError):
    pass


class BudgetExceeded(PlanningError):
    """Выдача нарушила бы гарантию по числу действий"""


class NoPlacement(PlanningError):
    pass


class TooLarge(PlanningError):
    pass


class LookaheadExceeded(PlanningError):
    pass


class NoGuaranteeAvailable(PlanningError):
    pass
