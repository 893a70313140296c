import json
import logging
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from .. import converters, errors
from ..classes.block_set import Block, BlockSet, validate
from ..classes.group import IntegerLikeGroup
from ..classes.inp_pattern import InpPatternInstance, Row
from ..classes.inp_pattern import Path as PatternPath
from ..classes.index_set import IndexSet
from ..classes.lexgroup import GroupElement
from ..classes.std_form import StdForm
from ..utils import fmt_fraction
from .formats import (
    ALL_FORMATS,
    BLOCK,
    BLOCKSET,
    FORMULA,
    INDEXSET,
    INSTANCE,
    STDFORM,
)

log = logging.getLogger("OAG#Database")


def check_format(data: Any, fmt: dict) -> dict:
    if not isinstance(data, dict):
        raise errors.ConversionError(
            f"I couldn't read {data!r} as a {fmt['name']} object."
        )
    for key, kind in fmt["required"].items():
        if key not in data:
            raise errors.ConversionError(
                f"A {fmt['name']} object needs the key `{key}`."
            )
        if not isinstance(data[key], kind):
            raise errors.ConversionError(
                f"The key `{key}` of a {fmt['name']} object should be a "
                f"{kind.__name__}, not {data[key]!r}."
            )
    for key, kind in fmt["optional"].items():
        if key in data and not isinstance(data[key], kind):
            raise errors.ConversionError(
                f"The key `{key}` of a {fmt['name']} object should be a "
                f"{kind.__name__}, not {data[key]!r}."
            )
    return data


# Rationals and elements
def rational_to_json(value: Fraction) -> str:
    return fmt_fraction(value)


def rational_from_json(value: Union[str, int]) -> Fraction:
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise errors.ConversionError(
            f"I couldn't interpret `{value}` as a rational number. "
            "Please pass something like `3/4` or `-2`."
        )


def element_to_json(x: GroupElement) -> List[str]:
    return [rational_to_json(c) for c in x.coords]


def element_from_json(
    data: List, rank: Optional[int] = None
) -> GroupElement:
    if not isinstance(data, list) or not data:
        raise errors.ConversionError(
            f"I couldn't interpret {data!r} as a group element. "
            'Please pass a list like ["0", "1/2"].'
        )
    x = GroupElement(rational_from_json(c) for c in data)
    if rank is not None and x.rank != rank:
        raise errors.RankMismatch(
            f"The element {x} has rank {x.rank}, expected {rank}."
        )
    return x


# Sets
def indexset_from_json(data: dict) -> IndexSet:
    return IndexSet.from_json(check_format(data, INDEXSET))


def block_to_json(block: Block) -> Dict:
    return {
        "base": element_to_json(block.base),
        "pattern": [element_to_json(x) for x in block.pattern],
        "indices": block.indices.to_json(),
    }


def block_from_json(data: dict, rank: int) -> Block:
    check_format(data, BLOCK)
    return Block(
        element_from_json(data["base"], rank),
        [element_from_json(x, rank) for x in data["pattern"]],
        indexset_from_json(data["indices"]),
    )


def blockset_to_json(d: BlockSet) -> Dict:
    return {
        "format": BLOCKSET["name"],
        "rank": d.rank,
        "nonneg": d.nonneg,
        "blocks": [block_to_json(b) for b in d.blocks],
    }


def blockset_from_json(data: dict) -> BlockSet:
    check_format(data, BLOCKSET)
    rank = data["rank"]
    blocks = [block_from_json(b, rank) for b in data["blocks"]]
    return validate(blocks, rank, data.get("nonneg", False))


def stdform_to_json(x: StdForm) -> Dict:
    return {
        "format": STDFORM["name"],
        "points": [
            {"lambda": rational_to_json(lam), "indices": w.to_json()}
            for lam, w in x.points
        ],
        "intervals": [
            {
                "lambda0": rational_to_json(a),
                "lambda1": rational_to_json(b),
                "indices": w.to_json(),
            }
            for a, b, w in x.intervals
        ],
    }


def stdform_from_json(data: dict) -> StdForm:
    check_format(data, STDFORM)
    try:
        points = [
            (
                rational_from_json(p["lambda"]),
                indexset_from_json(p["indices"]),
            )
            for p in data["points"]
        ]
        intervals = [
            (
                rational_from_json(i["lambda0"]),
                rational_from_json(i["lambda1"]),
                indexset_from_json(i["indices"]),
            )
            for i in data["intervals"]
        ]
    except (KeyError, TypeError) as e:
        raise errors.ConversionError(
            f"I couldn't read a family of the {STDFORM['name']} object: {e}"
        )
    return StdForm.build(points, intervals)


# Formulas
def formula_to_json(phi, g: IntegerLikeGroup) -> Dict:
    return {
        "format": FORMULA["name"],
        "group": g.to_json(),
        "formula": phi.sexpr(),
    }


def formula_from_json(data: dict):
    check_format(data, FORMULA)
    g = IntegerLikeGroup.from_json(data["group"])
    params = {
        name: element_from_json(value, g.rank)
        for name, value in data.get("params", {}).items()
    }
    return converters.formula(data["formula"], params), g


# Pattern instances
def _interval_to_json(interval) -> List:
    return [element_to_json(x) for x in interval]


def instance_to_json(p: InpPatternInstance) -> Dict:
    return {
        "format": INSTANCE["name"],
        "columns": p.columns,
        "dense": p.dense,
        "levels": [blockset_to_json(level) for level in p.levels],
        "rows": [
            {
                "kind": row.kind,
                "level": row.level,
                "k": row.k,
                "intervals": [_interval_to_json(j) for j in row.intervals],
            }
            for row in p.rows
        ],
        "paths": [
            {
                "columns": list(path.columns),
                "digits": [element_to_json(x) for x in path.digits],
                "extra": element_to_json(path.extra),
                "realizer": element_to_json(path.realizer),
            }
            for path in p.paths
        ],
    }


def instance_from_json(data: dict) -> InpPatternInstance:
    check_format(data, INSTANCE)
    try:
        levels = [blockset_from_json(level) for level in data["levels"]]
        rows = [
            Row(
                row["kind"],
                row.get("level"),
                [
                    tuple(element_from_json(x) for x in j)
                    for j in row["intervals"]
                ],
                row.get("k", 2),
            )
            for row in data["rows"]
        ]
        paths = [
            PatternPath(
                path["columns"],
                [element_from_json(x) for x in path["digits"]],
                element_from_json(path["extra"]),
                element_from_json(path["realizer"]),
            )
            for path in data["paths"]
        ]
    except (KeyError, TypeError, ValueError) as e:
        raise errors.ConversionError(
            f"I couldn't read a row or path of the {INSTANCE['name']} "
            f"object: {e}"
        )
    return InpPatternInstance(
        levels,
        rows,
        paths,
        data.get("columns", 0),
        data.get("dense", False),
    )


class Database:
    """JSON files on disk, keyed by path."""

    def __init__(self, root: Union[str, Path] = ".") -> None:
        self.root = Path(root)
        self.io_times: Dict[str, List[float]] = {}

    def log(self, path: str, time: float) -> None:
        self.io_times.setdefault(path, [])
        self.io_times[path].append(time)

    def _path(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        return path if path.is_absolute() else self.root / path

    def load(self, path: Union[str, Path]) -> Any:
        full = self._path(path)
        s = time.time()
        try:
            with open(full, encoding="utf-8") as f:
                data = json.load(f)
        except FileNotFoundError:
            raise errors.ConversionError(f"There is no file at `{full}`.")
        except json.JSONDecodeError as e:
            raise errors.ConversionError(
                f"`{full}` is not valid JSON: {e.msg} "
                f"(line {e.lineno}, column {e.colno})."
            )
        self.log(str(full), time.time() - s)
        log.debug(f"loaded {full}")
        return data

    def save(self, path: Union[str, Path], data: Any) -> None:
        full = self._path(path)
        full.parent.mkdir(parents=True, exist_ok=True)
        s = time.time()
        with open(full, "w", encoding="utf-8") as f:
            json.dump(data, f, indent=2, ensure_ascii=False)
        self.log(str(full), time.time() - s)
        log.debug(f"saved {full}")

    def load_any(self, path: Union[str, Path]) -> Any:
        """The object of a file, picked by its `format` key."""
        data = self.load(path)
        name = data.get("format") if isinstance(data, dict) else None
        if name == STDFORM["name"]:
            return stdform_from_json(data)
        if name == FORMULA["name"]:
            return formula_from_json(data)
        if name == INSTANCE["name"]:
            return instance_from_json(data)
        if name in (None, BLOCKSET["name"]):
            return blockset_from_json(data)
        if name not in ALL_FORMATS:
            raise errors.ConversionError(
                f"`{path}` has the unknown format `{name}`."
            )
        return data

    def load_blockset(self, path: Union[str, Path]) -> BlockSet:
        return blockset_from_json(self.load(path))

    def load_stdform(self, path: Union[str, Path]) -> StdForm:
        return stdform_from_json(self.load(path))
