"""Benchmark games and the GameSpec used by configs and the CLI."""

from __future__ import annotations

from dataclasses import dataclass

from psrokit.normal_form import load_matrix
from psrokit.zoo.kuhn import KuhnPoker
from psrokit.zoo.leduc import LeducPoker
from psrokit.zoo.matrices import (
    blotto_allocations,
    make_blotto,
    make_generalized_rps,
    make_random_uniform,
)
from psrokit.zoo.one_shot import OneShotGame, induced_normal_form
from psrokit.zoo.repeated_rps import RepeatedRPS

KINDS = (
    "generalized_rps",
    "random_uniform",
    "blotto",
    "matrix_file",
    "kuhn_poker",
    "repeated_rps",
    "leduc_poker",
)


@dataclass
class GameSpec:
    """Declarative description of a benchmark game.

    ``seed`` only applies to ``random_uniform``; leaving it None makes the
    game inherit the experiment seed, so every seeded run draws a fresh game.
    ``as_normal_form`` converts a small extensive-form game to its exact
    induced normal form.
    """

    kind: str
    n: int | None = None
    rows: int | None = None
    cols: int | None = None
    seed: int | None = None
    coins: int | None = None
    fields: int | None = None
    path: str | None = None
    repetitions: int | None = None
    as_normal_form: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown game kind {self.kind!r}; expected one of {KINDS}")

    def make(self, fallback_seed: int | None = None):
        if self.kind == "generalized_rps":
            if self.n is None:
                raise ValueError("generalized_rps needs n")
            game = make_generalized_rps(self.n)
        elif self.kind == "random_uniform":
            if self.rows is None or self.cols is None:
                raise ValueError("random_uniform needs rows and cols")
            seed = self.seed if self.seed is not None else fallback_seed
            if seed is None:
                raise ValueError("random_uniform needs a seed (own or experiment)")
            game = make_random_uniform(self.rows, self.cols, seed)
        elif self.kind == "blotto":
            if self.coins is None or self.fields is None:
                raise ValueError("blotto needs coins and fields")
            game = make_blotto(self.coins, self.fields)
        elif self.kind == "matrix_file":
            if self.path is None:
                raise ValueError("matrix_file needs a path")
            game = load_matrix(self.path)
        elif self.kind == "kuhn_poker":
            game = KuhnPoker()
        elif self.kind == "repeated_rps":
            if self.repetitions is None:
                raise ValueError("repeated_rps needs repetitions")
            game = RepeatedRPS(self.repetitions)
        else:
            game = LeducPoker()
        if self.as_normal_form:
            from psrokit.normal_form import NormalFormGame

            if isinstance(game, NormalFormGame):
                raise ValueError("as_normal_form only applies to extensive-form games")
            game = induced_normal_form(game)
        return game


def parse_game_spec(text: str) -> GameSpec:
    """Parse compact CLI notation, e.g. ``blotto:5,3`` or ``random_uniform:30,30,7``.

    Integer arguments fill the kind's parameters in order; ``matrix_file``
    takes a path instead.  A trailing ``,nfg`` requests the induced normal
    form of an extensive-form game.
    """
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    args = [tok.strip() for tok in rest.split(",") if tok.strip()] if rest else []
    as_nfg = False
    if args and args[-1] == "nfg":
        as_nfg = True
        args.pop()
    if kind == "matrix_file":
        if len(args) != 1:
            raise ValueError("matrix_file takes exactly one path argument")
        return GameSpec(kind, path=args[0])
    try:
        ints = [int(tok) for tok in args]
    except ValueError:
        raise ValueError(f"non-integer argument in game spec {text!r}") from None
    if kind == "generalized_rps":
        (n,) = ints
        return GameSpec(kind, n=n, as_normal_form=as_nfg)
    if kind == "random_uniform":
        if len(ints) == 2:
            return GameSpec(kind, rows=ints[0], cols=ints[1], as_normal_form=as_nfg)
        rows, cols, seed = ints
        return GameSpec(kind, rows=rows, cols=cols, seed=seed, as_normal_form=as_nfg)
    if kind == "blotto":
        coins, fields = ints
        return GameSpec(kind, coins=coins, fields=fields, as_normal_form=as_nfg)
    if kind == "kuhn_poker":
        if ints:
            raise ValueError("kuhn_poker takes no arguments")
        return GameSpec(kind, as_normal_form=as_nfg)
    if kind == "repeated_rps":
        (reps,) = ints
        return GameSpec(kind, repetitions=reps, as_normal_form=as_nfg)
    if kind == "leduc_poker":
        if ints:
            raise ValueError("leduc_poker takes no arguments")
        return GameSpec(kind, as_normal_form=as_nfg)
    raise ValueError(f"unknown game kind {kind!r}")


__all__ = [
    "GameSpec",
    "KINDS",
    "KuhnPoker",
    "LeducPoker",
    "OneShotGame",
    "RepeatedRPS",
    "blotto_allocations",
    "induced_normal_form",
    "make_blotto",
    "make_generalized_rps",
    "make_random_uniform",
    "parse_game_spec",
]
