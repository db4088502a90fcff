import os
import typing
import random
import hashlib
import logging
from fractions import Fraction

from . import linalg
from .algebra import Scalar
from .points import ProjectivePoint

LOGGER = logging.getLogger(__name__)

THREADS_ENV = "WARINGLAB_THREADS"

RunConfig = typing.TypedDict(
    "RunConfig",
    {
        "command": typing.Literal["generate", "verify", "rank", "h1", "suite"],
        "seed": int,
        "paths": typing.Dict[str, typing.Optional[str]],
        "case": typing.Optional[str],
        "d": typing.Optional[int],
        "m": typing.Optional[int],
        "format": str,
        "threshold_overrides": typing.Dict[str, int],
    },
)


def make_config(command, seed=0, paths=None, case=None, d=None, m=None, threshold_overrides=None) -> RunConfig:
    return {
        "command": command,
        "seed": seed,
        "paths": paths or {},
        "case": case,
        "d": d,
        "m": m,
        "format": "json",
        "threshold_overrides": threshold_overrides or {},
    }


def derive_seed(*parts: typing.Any) -> int:
    """A 64-bit seed that depends only on the given parts, never on call order."""
    digest = hashlib.sha256(":".join(str(p) for p in parts).encode("utf8")).hexdigest()
    return int(digest[:16], 16)


def thread_count() -> int:
    value = os.environ.get(THREADS_ENV)
    if value is None or value.strip() == "":
        return 1
    try:
        count = int(value)
    except ValueError as exception:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {value!r}.") from exception
    if count < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {value!r}.")
    return count


def parse_threshold_overrides(text: typing.Optional[str]) -> typing.Dict[str, int]:
    """Parse "line=K,conic=K" into a dict."""
    overrides: typing.Dict[str, int] = {}
    if not text:
        return overrides
    for item in text.split(","):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in ("line", "conic"):
            raise ValueError(f"Unknown threshold override {item!r}; use line=K,conic=K.")
        try:
            overrides[key] = int(value)
        except ValueError as exception:
            raise ValueError(f"Threshold for {key} must be an integer, got {value!r}.") from exception
    return overrides


def random_rational(rng: random.Random, height: int = 3, nonzero: bool = False) -> Fraction:
    while True:
        value = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if value or not nonzero:
            return value


def random_real_point(rng: random.Random, m: int, height: int = 3) -> ProjectivePoint:
    while True:
        coords = [rng.randint(-height, height) for _ in range(m + 1)]
        if any(coords):
            return ProjectivePoint(tuple(Scalar(c) for c in coords))


def random_independent_points(rng: random.Random, m: int, count: int, height: int = 3) -> typing.List[ProjectivePoint]:
    """``count`` real points spanning a (count-1)-dimensional subspace of P^m."""
    if count > m + 1:
        raise ValueError(f"P^{m} holds at most {m + 1} independent points.")
    while True:
        points = [random_real_point(rng, m, height) for _ in range(count)]
        if linalg.rank([list(p.coords) for p in points]) == count:
            return points
