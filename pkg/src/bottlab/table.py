"""The bundled table of the first homotopy groups pi_r U(n), r = 1..10,
n = 1..6, with the transpose/conjugate annotations and the stable border
(stable precisely when r < 2n).
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_R = 10
MAX_N = 6

#: (r, n) -> (group, flags) for every entry that is not a plain stable group
#: and every flagged entry. Stable groups default to "Z" (odd r) / "0" (even r).
_SPECIAL: dict[tuple[int, int], tuple[str, str]] = {
    # flagged stable entries (the last stable group in each column)
    (1, 1): ("Z", "t"),
    (3, 2): ("Z", "c"),
    (5, 3): ("Z", "t"),
    (7, 4): ("Z", "c"),
    (9, 5): ("Z", "t"),
    # n = 2 nonstable
    (4, 2): ("Z_2", "tc"),
    (5, 2): ("Z_2", "tc"),
    (6, 2): ("Z_12", "c"),
    (7, 2): ("Z_2", "tc"),
    (8, 2): ("Z_2", "tc"),
    (9, 2): ("Z_3", "c"),
    (10, 2): ("Z_15", "c"),
    # n = 3 nonstable
    (6, 3): ("Z_6", "c"),
    (7, 3): ("0", ""),
    (8, 3): ("Z_12", "t"),
    (9, 3): ("Z_3", "c"),
    (10, 3): ("Z_30", "c"),
    # n = 4 nonstable
    (8, 4): ("Z_24", "t"),
    (9, 4): ("Z_2", "tc"),
    (10, 4): ("Z_120+Z_2", "c"),
    # n = 5 nonstable
    (10, 5): ("Z_120", "c"),
}


@dataclass(frozen=True)
class HomotopyTableEntry:
    r: int
    n: int
    group: str
    flags: str  # "", "t", "c", or "tc"

    @property
    def stable(self) -> bool:
        return self.r < 2 * self.n


def _entry(r: int, n: int) -> HomotopyTableEntry:
    if (r, n) in _SPECIAL:
        group, flags = _SPECIAL[(r, n)]
    elif r < 2 * n:
        group, flags = ("Z" if r % 2 == 1 else "0"), ""
    else:
        # the remaining nonstable entries are the vanishing n = 1 column
        group, flags = "0", ""
    return HomotopyTableEntry(r, n, group, flags)


def table_entries() -> list[HomotopyTableEntry]:
    """All 60 entries in row-major order (r outer, n inner)."""
    return [_entry(r, n) for r in range(1, MAX_R + 1) for n in range(1, MAX_N + 1)]


def render_data(entries: list[HomotopyTableEntry] | None = None) -> str:
    """Machine-readable lines: 'r n group flags stable|nonstable'."""
    lines = []
    for e in entries or table_entries():
        lines.append(
            f"{e.r} {e.n} {e.group} {e.flags or '-'} "
            f"{'stable' if e.stable else 'nonstable'}"
        )
    return "\n".join(lines) + "\n"


def render_pretty(entries: list[HomotopyTableEntry] | None = None) -> str:
    """Human-readable grid; '*' marks the nonstable region (r >= 2n)."""
    entries = entries or table_entries()
    cell = {}
    for e in entries:
        text = e.group
        if e.flags:
            text += "[" + ",".join(e.flags) + "]"
        if not e.stable:
            text += "*"
        cell[(e.r, e.n)] = text
    width = max(len(v) for v in cell.values()) + 2
    lines = ["pi_r U(n)".ljust(6) + "".join(f"n={n}".ljust(width) for n in range(1, MAX_N + 1))]
    for r in range(1, MAX_R + 1):
        lines.append(
            f"r={r}".ljust(6) + "".join(cell[(r, n)].ljust(width) for n in range(1, MAX_N + 1))
        )
    lines.append("")
    lines.append("*    nonstable (r >= 2n)")
    lines.append("[t]  every map is homotopic to its transpose")
    lines.append("[c]  every map is homotopic to its complex conjugate")
    return "\n".join(lines) + "\n"
