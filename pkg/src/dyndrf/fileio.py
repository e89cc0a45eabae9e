"""Text formats for instances and run/ratio reports.

Instance file::

    # comment
    n 3
    m 2
    note free text
    1 1/10
    1/10 1
    1 1

Header lines start with a keyword; every other non-comment line is one
agent's demand row, whitespace separated, entries as integers or "p/q".
Rows are normalized on read (dividing by the row maximum) and a warning is
raised for any row that needed it.

Report files are tab separated and split into ``[steps]`` and ``[ratios]``
sections. Agent and resource numbers are 1-based in files.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (Instance, LengthMismatch, RaggedMatrix, ShareVector, normalize,
                   saturated_resources, validate)
from .drf import StepSolution
from .ratios import RatioReport, RatioStep, to_decimal

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_HEADER_KEYS = ("n", "m", "note")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class RenormalizedWarning(UserWarning):
    pass


@dataclass(frozen=True)
class InstanceFile:
    instance: Instance
    renormalized: tuple[int, ...] = ()  # 1-based rows that were not already normalized


def parse_rational(token: str, line: int = 0, column: int = 1) -> Fraction:
    if not _RATIONAL.match(token):
        raise ParseError(f"not an exact rational: {token!r}", line, column)
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {token!r}", line, column) from None


def _tokens(line: str) -> list[tuple[int, str]]:
    return [(mo.start() + 1, mo.group()) for mo in re.finditer(r"\S+", line)]


def parse_instance_file(text: str) -> InstanceFile:
    header: dict[str, object] = {}
    rows: list[list[Fraction]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0] if not raw.lstrip().startswith("note") else raw
        if not line.strip():
            continue
        toks = _tokens(line)
        col, first = toks[0]
        if first[0].isalpha():
            key = first.lower()
            if key not in _HEADER_KEYS:
                raise ParseError(f"unknown header key {first!r}", lineno, col)
            if rows:
                raise ParseError(f"header key {first!r} after demand rows", lineno, col)
            if key == "note":
                header["note"] = line.strip()[len(first):].strip()
                continue
            if len(toks) != 2 or not toks[1][1].isdigit():
                raise ParseError(f"{key} expects one non-negative integer", lineno, col)
            header[key] = int(toks[1][1])
            continue
        rows.append([parse_rational(tok, lineno, c) for c, tok in toks])

    if not rows:
        raise ParseError("no demand rows", max(1, len(text.splitlines())))
    n = header.get("n", len(rows))
    m = header.get("m", len(rows[0]))
    for i, row in enumerate(rows):
        if len(row) != m:
            raise RaggedMatrix(f"row {i + 1} has {len(row)} entries, header says m={m}", index=i)
    if len(rows) != n:
        raise LengthMismatch(f"header says n={n} but file has {len(rows)} rows")
    demands = normalize(rows)
    renormalized = tuple(i + 1 for i, (raw, d) in enumerate(zip(rows, demands))
                         if tuple(raw) != d.coords)
    inst = Instance(n, tuple(demands), note=str(header.get("note", "")))
    validate(inst)
    return InstanceFile(inst, renormalized)


def parse_instance(text: str) -> Instance:
    parsed = parse_instance_file(text)
    if parsed.renormalized:
        warnings.warn(f"rows {list(parsed.renormalized)} were normalized to a maximum of 1",
                      RenormalizedWarning, stacklevel=2)
    return parsed.instance


def format_instance(instance: Instance) -> str:
    lines = [f"n {instance.n}", f"m {instance.m}"]
    if instance.note:
        lines.append(f"note {instance.note}")
    lines += [" ".join(str(c) for c in d.coords) for d in instance.demands]
    return "\n".join(lines) + "\n"


def read_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


@dataclass(frozen=True)
class RunReport:
    n: int
    m: int
    algo: str = ""
    steps: tuple[StepSolution, ...] = ()
    saturated: tuple[tuple[int, ...], ...] = ()  # 0-based resource indices per step
    ratios: RatioReport | None = None


STEP_COLUMNS = ("k", "tau", "M", "saturated", "shares")
RATIO_COLUMNS = ("k", "online_sum", "offline_maxsum", "ratio1", "ratio1_dec",
                 "online_min", "offline_maxmin", "ratio2", "ratio2_dec")


def _fmt(value: Fraction | None) -> str:
    return "-" if value is None else str(value)


def _fmt_dec(value: Fraction | None) -> str:
    return "-" if value is None else to_decimal(value)


def format_steps(instance: Instance, steps: Sequence[StepSolution]) -> str:
    lines = ["[steps]", "\t".join(STEP_COLUMNS)]
    for sol in steps:
        sat = ",".join(str(r + 1) for r in saturated_resources(instance, sol.shares))
        lines.append("\t".join([str(sol.step), str(sol.split), str(sol.water_level),
                                sat or "-", " ".join(str(x) for x in sol.shares)]))
    return "\n".join(lines) + "\n"


def format_ratios(report: RatioReport) -> str:
    lines = ["[ratios]",
             f"cr1\t{_fmt(report.cr1)}\t{_fmt_dec(report.cr1)}",
             f"cr2\t{_fmt(report.cr2)}\t{_fmt_dec(report.cr2)}",
             "\t".join(RATIO_COLUMNS)]
    for r in report.per_step:
        lines.append("\t".join([
            str(r.k), _fmt(r.online_sum), _fmt(r.offline_maxsum), _fmt(r.ratio1), _fmt_dec(r.ratio1),
            _fmt(r.online_min), _fmt(r.offline_maxmin), _fmt(r.ratio2), _fmt_dec(r.ratio2)]))
    return "\n".join(lines) + "\n"


def format_report(instance: Instance, steps: Sequence[StepSolution] = (), algo: str = "",
                  ratios: RatioReport | None = None) -> str:
    head = ["# dyndrf report", f"n\t{instance.n}", f"m\t{instance.m}"]
    if algo:
        head.append(f"algo\t{algo}")
    parts = ["\n".join(head) + "\n"]
    if steps:
        parts.append(format_steps(instance, steps))
    if ratios is not None:
        parts.append(format_ratios(ratios))
    return "".join(parts)


def _opt(token: str, lineno: int, col: int = 1) -> Fraction | None:
    return None if token == "-" else parse_rational(token, lineno, col)


def parse_report(text: str) -> RunReport:
    meta: dict[str, str] = {}
    steps, saturated, ratio_rows = [], [], []
    cr = {"cr1": None, "cr2": None}
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.startswith("#"):
            continue
        if raw.startswith("["):
            section = raw.strip()
            if section not in ("[steps]", "[ratios]"):
                raise ParseError(f"unknown section {section}", lineno)
            continue
        cells = raw.split("\t")
        if section is None:
            if len(cells) != 2:
                raise ParseError("header lines are 'key<TAB>value'", lineno)
            meta[cells[0]] = cells[1]
        elif section == "[steps]":
            if tuple(cells) == STEP_COLUMNS:
                continue
            if len(cells) != len(STEP_COLUMNS):
                raise ParseError(f"expected {len(STEP_COLUMNS)} columns, got {len(cells)}", lineno)
            try:
                k, tau = int(cells[0]), int(cells[1])
            except ValueError:
                raise ParseError("k and tau must be integers", lineno) from None
            level = parse_rational(cells[2], lineno)
            shares = tuple(parse_rational(t, lineno) for t in cells[4].split())
            sat = () if cells[3] == "-" else tuple(int(t) - 1 for t in cells[3].split(","))
            steps.append(StepSolution(ShareVector(k, shares), level, tau))
            saturated.append(sat)
        else:
            if cells[0] in cr:
                cr[cells[0]] = _opt(cells[1], lineno)
                continue
            if tuple(cells) == RATIO_COLUMNS:
                continue
            if len(cells) != len(RATIO_COLUMNS):
                raise ParseError(f"expected {len(RATIO_COLUMNS)} columns, got {len(cells)}", lineno)
            v = [_opt(c, lineno) for c in (cells[1], cells[2], cells[3], cells[5], cells[6], cells[7])]
            ratio_rows.append(RatioStep(int(cells[0]), *v))
    try:
        n, m = int(meta["n"]), int(meta["m"])
    except (KeyError, ValueError):
        raise ParseError("report header needs integer n and m", 1) from None
    ratios = RatioReport(tuple(ratio_rows), cr["cr1"], cr["cr2"]) if ratio_rows else None
    return RunReport(n, m, meta.get("algo", ""), tuple(steps), tuple(saturated), ratios)


def steps_section(text: str) -> str:
    """The ``[steps]`` block of a report, as written."""
    start = text.index("[steps]")
    end = text.find("\n[", start)
    return text[start:] if end < 0 else text[start:end + 1]
