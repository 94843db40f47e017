"""
Поток прибытий с ограниченным окном просмотра (lookahead)
"""
import logging
from typing import Sequence

from app.core.exceptions import CountMismatch, LookaheadExceeded

logger = logging.getLogger(__name__)


class ArrivalStream:
    """
    Последовательность A, видимая только через окно из ℓ ближайших прибытий.

    Каждое обращение журналируется; `max_peek_depth` — максимальная глубина
    заглядывания (1 — только текущий груз). Множество меток известно заранее
    (D известна полностью), поэтому последний груз можно вывести без просмотра.
    """

    def __init__(self, arrival: Sequence[int], window: int):
        if window < 1:
            raise LookaheadExceeded("Окно должно быть положительным", window=window)
        self._arrival = tuple(arrival)
        self.window = window
        self.cursor = 0
        self.max_peek_depth = 0
        self.peek_log: list[int] = []
        self._universe = frozenset(self._arrival)
        self._consumed: list[int] = []

    def __len__(self) -> int:
        return len(self._arrival)

    @property
    def remaining(self) -> int:
        return len(self._arrival) - self.cursor

    @property
    def consumed(self) -> tuple[int, ...]:
        """Уже прибывшие грузы в порядке прибытия"""
        return tuple(self._consumed)

    def _log(self, depth: int) -> None:
        self.peek_log.append(depth)
        self.max_peek_depth = max(self.max_peek_depth, depth)

    def peek(self, i: int = 0) -> int:
        """Груз, прибывающий через i позиций от текущего (0 — текущий)"""
        if i >= self.window:
            raise LookaheadExceeded(
                "Запрос за пределами окна", depth=i + 1, window=self.window
            )
        if self.cursor + i >= len(self._arrival):
            raise CountMismatch("Поток исчерпан", depth=i + 1, remaining=self.remaining)
        self._log(i + 1)
        return self._arrival[self.cursor + i]

    def advance(self) -> int:
        """Принять текущий груз"""
        load = self.peek(0)
        self.cursor += 1
        self._consumed.append(load)
        return load

    def upcoming(self, count: int) -> list[int]:
        """
        Следующие count прибытий (курсор не двигается).

        Если запрос доходит до конца потока, последний груз выводится из
        множества меток, так что глубина просмотра равна count − 1.
        """
        if count > self.remaining:
            raise CountMismatch("Поток исчерпан", requested=count, remaining=self.remaining)
        if count == 0:
            return []
        if count < self.remaining:
            return [self.peek(i) for i in range(count)]

        seen = [self.peek(i) for i in range(count - 1)]
        missing = self._universe.difference(self._consumed, seen)
        (last,) = missing
        return seen + [last]

    def take(self, count: int) -> list[int]:
        """upcoming + advance: принять count грузов"""
        loads = self.upcoming(count)
        for _ in loads:
            self.cursor += 1
        self._consumed.extend(loads)
        return loads
