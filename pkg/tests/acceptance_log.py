"""Collects per-criterion verdicts so the acceptance suite can print one line each."""

from collections import defaultdict

_results: dict[int, list[tuple[bool, str]]] = defaultdict(list)


def record(number: int, ok: bool, detail: str) -> bool:
    _results[number].append((ok, detail))
    print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
    return ok


def summary_lines() -> list[str]:
    out = []
    for number in sorted(_results):
        parts = _results[number]
        ok = all(p for p, _ in parts)
        out.append(f"{'PASS' if ok else 'FAIL'} criterion {number}: " + "; ".join(d for _, d in parts))
    return out
