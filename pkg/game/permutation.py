from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Tuple

from errors import InvalidStrategyError


@dataclass(frozen=True)
class Permutation:
    """A relabeling of hats 1..size; images[j - 1] is where hat j goes."""

    size: int
    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(int(i) for i in self.images))
        if len(self.images) != self.size or sorted(self.images) != list(range(1, self.size + 1)):
            raise InvalidStrategyError(f"{self.images} is not a permutation of 1..{self.size}")

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(size, tuple(range(1, size + 1)))

    def __call__(self, hat: int) -> int:
        return self.images[hat - 1]

    def inverse(self) -> "Permutation":
        images = [0] * self.size
        for source, target in enumerate(self.images, start=1):
            images[target - 1] = source
        return Permutation(self.size, tuple(images))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other."""
        return Permutation(self.size, tuple(self(other(j)) for j in range(1, self.size + 1)))

    def apply_mask(self, mask: int) -> int:
        """Image of the white-hat set encoded by mask."""
        out = 0
        for j in range(self.size):
            if (mask >> j) & 1:
                out |= 1 << (self.images[j] - 1)
        return out

    def mask_table(self) -> Tuple[int, ...]:
        return tuple(self.apply_mask(m) for m in range(1 << self.size))


def all_permutations(size: int) -> Iterator[Permutation]:
    for images in permutations(range(1, size + 1)):
        yield Permutation(size, images)
