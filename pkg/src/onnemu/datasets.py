"""Built-in letter bitmaps at the benchmark grid sizes.

Five datasets keyed by grid size: 3x3 holds two letters, the rest hold
five.  Sizes are rows x columns.  The bitmaps are fixed constants of
this repository; any letter set of the right shape works with the rest
of the package, these are simply the ones the shipped benchmark runs
use.  Larger grids draw the same stroke two pixels wide so corruption
percentages act on comparable letter anatomy.
"""

from __future__ import annotations

from pathlib import Path

from onnemu.core import BinaryPattern, parse_patterns

DATASETS: dict[str, dict[str, tuple[str, ...]]] = {
    "3x3": {
        "L": (
            "100",
            "100",
            "111",
        ),
        "T": (
            "111",
            "010",
            "010",
        ),
    },
    "5x4": {
        "A": (
            "0110",
            "1001",
            "1111",
            "1001",
            "1001",
        ),
        "C": (
            "0111",
            "1000",
            "1000",
            "1000",
            "0111",
        ),
        "T": (
            "1111",
            "0110",
            "0110",
            "0110",
            "0110",
        ),
        "U": (
            "1001",
            "1001",
            "1001",
            "1001",
            "0110",
        ),
        "X": (
            "1001",
            "1001",
            "0110",
            "1001",
            "1001",
        ),
    },
    "7x6": {
        "A": (
            "001100",
            "010010",
            "100001",
            "100001",
            "111111",
            "100001",
            "100001",
        ),
        "E": (
            "111111",
            "100000",
            "100000",
            "111110",
            "100000",
            "100000",
            "111111",
        ),
        "H": (
            "100001",
            "100001",
            "100001",
            "111111",
            "100001",
            "100001",
            "100001",
        ),
        "O": (
            "011110",
            "100001",
            "100001",
            "100001",
            "100001",
            "100001",
            "011110",
        ),
        "T": (
            "111111",
            "001100",
            "001100",
            "001100",
            "001100",
            "001100",
            "001100",
        ),
    },
    "10x10": {
        "L": (
            "1100000000",
            "1100000000",
            "1100000000",
            "1100000000",
            "1100000000",
            "1100000000",
            "1100000000",
            "1100000000",
            "1111111111",
            "1111111111",
        ),
        "O": (
            "0011111100",
            "0111111110",
            "1100000011",
            "1100000011",
            "1100000011",
            "1100000011",
            "1100000011",
            "1100000011",
            "0111111110",
            "0011111100",
        ),
        "T": (
            "1111111111",
            "1111111111",
            "0000110000",
            "0000110000",
            "0000110000",
            "0000110000",
            "0000110000",
            "0000110000",
            "0000110000",
            "0000110000",
        ),
        "X": (
            "1100000011",
            "0110000110",
            "0011001100",
            "0001111000",
            "0000110000",
            "0000110000",
            "0001111000",
            "0011001100",
            "0110000110",
            "1100000011",
        ),
        "Z": (
            "1111111111",
            "1111111111",
            "0000000110",
            "0000001100",
            "0000110000",
            "0001100000",
            "0011000000",
            "0110000000",
            "1111111111",
            "1111111111",
        ),
    },
    "22x22": {
        "A": (
            "0000000011111100000000",
            "0000000011111100000000",
            "0000001111001111000000",
            "0000001111001111000000",
            "0000111100000011110000",
            "0000111100000011110000",
            "0011110000000000111100",
            "0011110000000000111100",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111111111111111111111",
            "1111111111111111111111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
        ),
        "H": (
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111111111111111111111",
            "1111111111111111111111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
        ),
        "L": (
            "1111000000000000000000",
            "1111000000000000000000",
            "1111000000000000000000",
            "1111000000000000000000",
            "1111000000000000000000",
            "1111000000000000000000",
            "1111000000000000000000",
            "1111000000000000000000",
            "1111000000000000000000",
            "1111000000000000000000",
            "1111000000000000000000",
            "1111000000000000000000",
            "1111000000000000000000",
            "1111000000000000000000",
            "1111000000000000000000",
            "1111000000000000000000",
            "1111000000000000000000",
            "1111000000000000000000",
            "1111111111111111111111",
            "1111111111111111111111",
            "1111111111111111111111",
            "1111111111111111111111",
        ),
        "O": (
            "0000111111111111110000",
            "0000111111111111110000",
            "0011110000000000111100",
            "0011110000000000111100",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "1111000000000000001111",
            "0011110000000000111100",
            "0011110000000000111100",
            "0000111111111111110000",
            "0000111111111111110000",
        ),
        "X": (
            "1111000000000000001111",
            "1111000000000000001111",
            "0011110000000000111100",
            "0011110000000000111100",
            "0000111100000011110000",
            "0000111100000011110000",
            "0000001111001111000000",
            "0000001111001111000000",
            "0000000011111100000000",
            "0000000011111100000000",
            "0000000000110000000000",
            "0000000000110000000000",
            "0000000011111100000000",
            "0000000011111100000000",
            "0000001111001111000000",
            "0000001111001111000000",
            "0000111100000011110000",
            "0000111100000011110000",
            "0011110000000000111100",
            "0011110000000000111100",
            "1111000000000000001111",
            "1111000000000000001111",
        ),
    },
}


def builtin_names() -> tuple[str, ...]:
    return tuple(DATASETS)


def builtin_dataset(name: str) -> tuple[list[str], list[BinaryPattern]]:
    """Letter labels plus patterns for a built-in size key like '10x10'."""
    if name not in DATASETS:
        raise KeyError(
            f"unknown dataset {name!r}; built-ins: {', '.join(DATASETS)}"
        )
    letters = DATASETS[name]
    labels = list(letters)
    patterns = [BinaryPattern.from_rows([[int(c) for c in row] for row in rows])
                for rows in letters.values()]
    return labels, patterns


def load_dataset(spec: str) -> tuple[list[str], list[BinaryPattern]]:
    """Resolve a dataset argument: built-in size key, a multi-pattern
    file, or a directory of pattern files (sorted by name)."""
    if spec in DATASETS:
        return builtin_dataset(spec)
    path = Path(spec)
    if path.is_dir():
        files = sorted(p for p in path.iterdir() if p.is_file())
        if not files:
            raise ValueError(f"dataset directory {spec!r} holds no files")
        labels: list[str] = []
        patterns: list[BinaryPattern] = []
        for f in files:
            parsed = parse_patterns(f.read_text())
            for k, pat in enumerate(parsed):
                labels.append(f.stem if len(parsed) == 1 else f"{f.stem}#{k}")
                patterns.append(pat)
        return labels, patterns
    if path.is_file():
        parsed = parse_patterns(path.read_text())
        return [f"{path.stem}#{k}" for k in range(len(parsed))], parsed
    raise ValueError(f"dataset {spec!r} is neither a built-in name nor a path")
