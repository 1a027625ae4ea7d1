"""
Named STC-structures: angelic and demonic choice, terminating asymmetric
conflict and the k-truncated shutdown-backup system.
"""

from __future__ import annotations

from typing import Callable

from src.core.structures import Event, STConfig, STStructure, validate_st
from src.stc.structures import STCConfig, STCStructure, stc_structure, validate_stc

__all__ = [
    "gen_angelic",
    "gen_demonic",
    "gen_asymmetric_conflict_stc",
    "gen_shutdown_backup",
    "gen_s_par_bstar",
    "backup_events",
    "STC_SAMPLES",
]

_CHOSEN = [("de", "d", "f"), ("df", "d", "e"), ("de", "de", "f"), ("df", "df", "e")]


def gen_angelic() -> STCStructure:
    """Late choice: e and f are still both possible once d has terminated."""

    return stc_structure([("", "", ""), ("d", "", ""), ("d", "d", ""), *_CHOSEN])


def gen_demonic() -> STCStructure:
    """Early choice: starting d already cancels one of e and f."""

    return stc_structure(
        [
            ("", "", ""),
            ("d", "", "e"),
            ("d", "", "f"),
            ("d", "d", "e"),
            ("d", "d", "f"),
            *_CHOSEN,
        ]
    )


def gen_asymmetric_conflict_stc() -> STCStructure:
    """s + b;s where s alone cancels b, so (s,s,b) and (bs,bs,∅) are both terminal."""

    return stc_structure(
        [
            ("", "", ""),
            ("b", "", ""),
            ("b", "b", ""),
            ("s", "", "b"),
            ("s", "s", "b"),
            ("bs", "b", ""),
            ("bs", "bs", ""),
        ]
    )


def backup_events(k_max: int) -> list[Event]:
    return [f"b{i}" for i in range(1, k_max + 1)]


def gen_shutdown_backup(k_max: int) -> STCStructure:
    """
    Backups b1, b2, ... run one after the other while a shutdown s may start
    at any time; shutdown cancels every backup not yet started. Truncated to
    ``k_max`` backups.
    """

    if k_max < 1:
        raise ValueError("Shutdown-backup needs at least one backup event.")
    backups = backup_events(k_max)

    def before(k: int) -> frozenset[Event]:
        return frozenset(backups[: k - 1])

    def from_(k: int) -> frozenset[Event]:
        return frozenset(backups[k - 1 :])

    s = frozenset({"s"})
    configs: set[STCConfig] = set()
    for k in range(1, k_max + 2):
        done = before(k)
        configs.add(STCConfig(done, done))
        configs.add(STCConfig(s | done, done, from_(k)))
        configs.add(STCConfig(s | done, s | done, from_(k)))
        configs.add(STCConfig(s | done, done))
        configs.add(STCConfig(s | done, s | done))
    for k in range(1, k_max + 1):
        done, running = before(k), before(k + 1)
        later = from_(k + 1)
        configs.add(STCConfig(running, done))
        # shutdown starts while b_k runs: b_k is neither canceled nor done
        configs.add(STCConfig(s | running, done, later))
        configs.add(STCConfig(s | running, s | done, later))
        configs.add(STCConfig(s | running, running, later))

    labels = {"s": "s", **{event: "b" for event in backups}}
    return validate_stc(["s", *backups], configs, labels)


def gen_s_par_bstar(k_max: int) -> STStructure:
    """s in parallel with the chain b1; b2; ...; b_k_max, as a plain ST-structure."""

    backups = backup_events(k_max)
    chain: list[STConfig] = []
    for k in range(1, k_max + 2):
        done = frozenset(backups[: k - 1])
        chain.append(STConfig(done, done))
        if k <= k_max:
            chain.append(STConfig(done | {backups[k - 1]}, done))
    shutdown = [STConfig.of(), STConfig.of("s"), STConfig.of("s", "s")]
    configs = [left.union(right) for left in chain for right in shutdown]
    labels = {"s": "s", **{event: "b" for event in backups}}
    return validate_st(["s", *backups], configs, labels)


STC_SAMPLES: dict[str, Callable[[], STCStructure]] = {
    "angelic": gen_angelic,
    "demonic": gen_demonic,
    "asymmetric-conflict-stc": gen_asymmetric_conflict_stc,
    "shutdown-backup-2": lambda: gen_shutdown_backup(2),
}
