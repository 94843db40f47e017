"""
Модель рабочей области: сетка, клетки, расстановка грузов
"""
from dataclasses import dataclass, field
from typing import Iterator, Mapping, NamedTuple

from app.core.exceptions import InvalidArrangement, InvalidGrid


class Cell(NamedTuple):
    """Клетка сетки: строка 1 — передний (открытый) ряд, столбец 1 — крайний левый"""
    row: int
    col: int

    def neighbors(self) -> tuple["Cell", "Cell", "Cell", "Cell"]:
        # порядок фиксирован: вниз, влево, вправо, вверх (лексикографический)
        return (
            Cell(self.row - 1, self.col),
            Cell(self.row, self.col - 1),
            Cell(self.row, self.col + 1),
            Cell(self.row + 1, self.col),
        )

    def is_adjacent(self, other: "Cell") -> bool:
        return abs(self.row - other.row) + abs(self.col - other.col) == 1


@dataclass(frozen=True)
class GridSpec:
    """Рабочая область r×c, открытая с переднего ряда"""
    rows: int
    cols: int

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise InvalidGrid(
                "Размеры сетки должны быть положительными",
                rows=self.rows,
                cols=self.cols,
            )

    @property
    def capacity(self) -> int:
        return self.rows * self.cols

    def contains(self, cell: Cell) -> bool:
        return 1 <= cell.row <= self.rows and 1 <= cell.col <= self.cols

    def neighbors(self, cell: Cell) -> Iterator[Cell]:
        for nb in cell.neighbors():
            if self.contains(nb):
                yield nb

    def cells(self) -> Iterator[Cell]:
        """Все клетки: спереди назад, слева направо"""
        for row in range(1, self.rows + 1):
            for col in range(1, self.cols + 1):
                yield Cell(row, col)

    def front_row(self) -> list[Cell]:
        return [Cell(1, col) for col in range(1, self.cols + 1)]

    def __str__(self) -> str:
        return f"{self.rows}x{self.cols}"


@dataclass(frozen=True)
class Arrangement:
    """Инъективное отображение груз → клетка"""
    grid: GridSpec
    placement: Mapping[int, Cell]
    _by_cell: dict[Cell, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        placement = {int(load): Cell(*cell) for load, cell in self.placement.items()}
        by_cell: dict[Cell, int] = {}
        for load, cell in placement.items():
            if not self.grid.contains(cell):
                raise InvalidArrangement(
                    "Клетка вне сетки", load=load, cell=cell, grid=str(self.grid)
                )
            if cell in by_cell:
                raise InvalidArrangement(
                    "Два груза в одной клетке", cell=cell, loads=[by_cell[cell], load]
                )
            by_cell[cell] = load
        object.__setattr__(self, "placement", placement)
        object.__setattr__(self, "_by_cell", by_cell)

    def __len__(self) -> int:
        return len(self.placement)

    def __contains__(self, load: int) -> bool:
        return load in self.placement

    def __getitem__(self, load: int) -> Cell:
        return self.placement[load]

    @property
    def loads(self) -> frozenset[int]:
        return frozenset(self.placement)

    def occupant(self, cell: Cell) -> int | None:
        return self._by_cell.get(cell)

    def occupied(self) -> frozenset[Cell]:
        return frozenset(self._by_cell)

    def relabeled(self, mapping: Mapping[int, int]) -> "Arrangement":
        return Arrangement(self.grid, {mapping[load]: c for load, c in self.placement.items()})
