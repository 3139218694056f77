"""Shared test helpers: an independent float-character oracle and a CLI runner."""

from __future__ import annotations

import cmath
import math
from typing import Sequence


def float_char_sum(
    s_coords: Sequence[Sequence[int]],
    h_coords: Sequence[int],
    orders: Sequence[int],
) -> complex:
    """sum over S of exp(2 pi i <h, s>) computed purely in floats.

    Deliberately independent of the package's exact arithmetic: the weights
    and the dot product are recomputed from scratch here.
    """
    L = math.lcm(*orders)
    total = 0j
    for s in s_coords:
        e = sum((L // n) * hc * sc for n, hc, sc in zip(orders, h_coords, s))
        total += cmath.exp(2j * cmath.pi * e / L)
    return total


def run_cli(args: list[str], capsys) -> tuple[int, str]:
    from spectile.cli import main

    code = main(args)
    out = capsys.readouterr().out
    return code, out
