from __future__ import annotations

from itertools import combinations
from typing import List, Tuple

import pandas as pd

from algebra.freealg import NCPoly
from algebra.scalar import Scalar, surface_name
from evaluation.report import CheckRecord, timed
from hopf.checks import STAR_DEGREE, run_hopf_checks
from hopf.limits import parameters, take_limits
from hopf.spec import HopfSpec


def limit_chains(h: HopfSpec, include_pairs: bool = True) -> List[Tuple[str, ...]]:
    symbols = sorted(parameters(h))
    chains = [(s,) for s in symbols]
    if include_pairs:
        chains += list(combinations(symbols, 2))
    return chains


def _limit_label(chain: Tuple[str, ...]) -> str:
    return ",".join(f"{surface_name(s)}->inf" for s in chain)


def run_limit_lattice(h: HopfSpec, include_pairs: bool = True, star_degree: int = STAR_DEGREE) -> List[CheckRecord]:
    """Full axiom suite on every single and paired parameter limit of h."""
    records = []
    for chain in limit_chains(h, include_pairs):
        with timed() as elapsed:
            limit = take_limits(h, chain)
            results = run_hopf_checks(limit, star_degree)
        failed = [r for r in results if not r.passed]
        records.append(
            CheckRecord(
                name=f"limit[{_limit_label(chain)}]",
                target=h.name,
                status="fail" if failed else "pass",
                witness="; ".join(f"{r.name}: {r.witness}" for r in failed),
                degree=h.degree,
                wall_time=elapsed[0],
                details={r.name: "pass" if r.passed else "fail" for r in results},
            )
        )
    if "inv_sigma" in parameters(h) and "K" in h.generators and "H" in h.generators:
        records.append(sigma_commutator_record(h))
    return records


def sigma_commutator_record(h: HopfSpec) -> CheckRecord:
    """[K, H] is iP once sigma goes to infinity."""
    limit = take_limits(h, ("inv_sigma",))
    bracket = limit.presentation.bracket("K", "H")
    expected = NCPoly.generator("P", h.generators) * Scalar.imaginary()
    rank = h.presentation.rank
    return CheckRecord(
        name="limit_sigma_commutator",
        target=h.name,
        status="pass" if bracket == expected else "fail",
        witness="" if bracket == expected else f"[K, H] -> {bracket.to_text(rank)}",
        degree=h.degree,
        details={"[K, H]": bracket.to_text(rank)},
    )


def lattice_frame(records: List[CheckRecord]) -> pd.DataFrame:
    rows = []
    for record in sorted(records, key=lambda r: r.name):
        failed = [name for name, status in record.details.items() if status == "fail"]
        rows.append({"limit": record.name, "status": record.status, "failed_checks": ",".join(failed)})
    return pd.DataFrame(rows, columns=["limit", "status", "failed_checks"])
