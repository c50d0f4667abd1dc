"""Independent brute-force reference implementations used only by tests.

These deliberately share no code with the production metrics so the test
suite can compare two separately derived answers.
"""
from __future__ import annotations

import cmath


def oracle_order_accuracy(gen_orders: list[int], ref_orders: list[int]) -> float:
    """Pairwise-order agreement between two parallel lists of temporal
    positions for matched actions (index i on one side matches index i on
    the other). Pairs with a -1 or tied reference position are skipped;
    no usable pairs scores 1.0.
    """
    if len(gen_orders) != len(ref_orders):
        raise ValueError("order lists must be parallel")
    total = 0
    correct = 0
    n = len(ref_orders)
    for i in range(n):
        for j in range(i + 1, n):
            ri, rj = ref_orders[i], ref_orders[j]
            if ri == -1 or rj == -1 or ri == rj:
                continue
            total += 1
            gi, gj = gen_orders[i], gen_orders[j]
            if (gi > gj) - (gi < gj) == (ri > rj) - (ri < rj):
                correct += 1
    return correct / total if total else 1.0


def oracle_dft(signal: list[float]) -> list[complex]:
    """Direct O(T^2) discrete Fourier transform."""
    T = len(signal)
    return [
        sum(signal[t] * cmath.exp(-2j * cmath.pi * k * t / T) for t in range(T))
        for k in range(T)
    ]
