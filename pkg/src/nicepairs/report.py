"""Serialization of classification reports and parsing of matrix files."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Iterable, TextIO

from .classify import AdmissibleDiagram, ClassificationReport, Link
from .pairs import DimensionIdentity, Pair, ReductionChain, ReductionStep, StepKind, Window

CSV_FIELDS = [
    "genus", "n", "d", "window", "gcd", "nice", "nice_chain", "fine",
    "fine_top", "fine_meets", "newstead", "moduli_dim", "quotient_identity",
]


class ParseError(ValueError):
    """Malformed input file; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def chain_to_list(chain: ReductionChain | None) -> list[dict[str, Any]]:
    if chain is None:
        return []
    return [{"kind": s.kind.value, "n": s.target.n, "d": s.target.d, "k": s.k}
            for s in chain.steps]


def chain_from_list(g: int, start: Pair, steps: list[dict[str, Any]]) -> ReductionChain:
    out = []
    cur = start
    for s in steps:
        nxt = Pair(s["n"], s["d"])
        out.append(ReductionStep(StepKind(s["kind"]), cur, nxt, s["k"]))
        cur = nxt
    return ReductionChain(g, start, tuple(out))


def diagram_to_dict(diagram: AdmissibleDiagram | None) -> dict[str, Any] | None:
    if diagram is None:
        return None
    return {
        "top": [[p.n, p.d] for p in diagram.top],
        "links": [
            {
                "meet": [l.meet.n, l.meet.d],
                "left_chain": chain_to_list(l.left_chain),
                "right_chain": chain_to_list(l.right_chain),
            }
            for l in diagram.links
        ],
        "terminal_chain": chain_to_list(diagram.terminal_nice_witness),
    }


def diagram_from_dict(g: int, obj: dict[str, Any] | None) -> AdmissibleDiagram | None:
    if obj is None:
        return None
    top = tuple(Pair(*p) for p in obj["top"])
    links = tuple(
        Link(
            chain_from_list(g, top[i], l["left_chain"]),
            chain_from_list(g, top[i + 1], l["right_chain"]),
            Pair(*l["meet"]),
        )
        for i, l in enumerate(obj["links"])
    )
    return AdmissibleDiagram(g, top, links, chain_from_list(g, top[-1], obj["terminal_chain"]))


def report_to_dict(r: ClassificationReport) -> dict[str, Any]:
    q = r.quotient_identity
    return {
        "genus": r.genus,
        "n": r.pair.n,
        "d": r.pair.d,
        "window": r.window.value,
        "gcd": r.gcd_nd,
        "nice": r.is_nice,
        "nice_chain": chain_to_list(r.nice_witness),
        "fine": r.is_fine,
        "fine_diagram": diagram_to_dict(r.fine_witness),
        "newstead": r.newstead_condition,
        "dims": {
            "moduli": r.moduli_dim,
            "quotient_identity": None if q is None else {"lhs": q.lhs, "rhs": q.rhs, "equal": q.equal},
        },
        "gcd_dg": r.gcd_dg,
        "gcd_dng": r.gcd_dng,
        "gcd_corollary": r.gcd_corollary_holds,
    }


def report_from_dict(obj: dict[str, Any]) -> ClassificationReport:
    g = obj["genus"]
    p = Pair(obj["n"], obj["d"])
    q = obj["dims"]["quotient_identity"]
    nice = obj["nice"]
    return ClassificationReport(
        genus=g,
        pair=p,
        window=Window(obj["window"]),
        gcd_nd=obj["gcd"],
        is_nice=nice,
        nice_witness=chain_from_list(g, p, obj["nice_chain"]) if nice else None,
        is_fine=obj["fine"],
        fine_witness=diagram_from_dict(g, obj["fine_diagram"]),
        newstead_condition=obj["newstead"],
        gcd_corollary_holds=obj["gcd_corollary"],
        gcd_dg=obj["gcd_dg"],
        gcd_dng=obj["gcd_dng"],
        moduli_dim=obj["dims"]["moduli"],
        quotient_identity=None if q is None else DimensionIdentity(q["lhs"], q["rhs"]),
    )


def to_json(r: ClassificationReport) -> str:
    return json.dumps(report_to_dict(r), separators=(", ", ": ")) + "\n"


def from_json(text: str) -> ClassificationReport:
    return report_from_dict(json.loads(text))


def csv_row(r: ClassificationReport) -> dict[str, Any]:
    fw = r.fine_witness
    q = r.quotient_identity
    return {
        "genus": r.genus,
        "n": r.pair.n,
        "d": r.pair.d,
        "window": r.window.value,
        "gcd": r.gcd_nd,
        "nice": int(r.is_nice),
        "nice_chain": r.nice_witness.codes if r.nice_witness else "",
        "fine": int(r.is_fine),
        "fine_top": "" if fw is None else ">".join(f"{p.n}:{p.d}" for p in fw.top),
        "fine_meets": "" if fw is None else ">".join(f"{l.meet.n}:{l.meet.d}" for l in fw.links),
        "newstead": int(r.newstead_condition),
        "moduli_dim": r.moduli_dim,
        "quotient_identity": "" if q is None else f"{q.lhs}={q.rhs}",
    }


class CsvReportWriter:
    """Streams report rows with a single header line."""

    def __init__(self, stream: TextIO):
        self._w = csv.DictWriter(stream, fieldnames=CSV_FIELDS, lineterminator="\n")
        self._w.writeheader()

    def write(self, r: ClassificationReport) -> None:
        self._w.writerow(csv_row(r))


def to_csv(reports: Iterable[ClassificationReport]) -> str:
    buf = io.StringIO()
    w = CsvReportWriter(buf)
    for r in reports:
        w.write(r)
    return buf.getvalue()


def to_text(r: ClassificationReport) -> str:
    lines = [
        f"genus {r.genus}, pair {r.pair}: {r.window.value}",
        f"  gcd(n,d)={r.gcd_nd}  gcd(d,g)={r.gcd_dg}  gcd(d+n,g)={r.gcd_dng}",
        f"  nice={str(r.is_nice).lower()}",
    ]
    if r.nice_witness is not None:
        lines.append(f"    chain {r.nice_witness}  [{r.nice_witness.codes}]")
    lines.append(f"  fine={str(r.is_fine).lower()}")
    fw = r.fine_witness
    if fw is not None and fw.links:
        lines.append("    top " + " ~ ".join(str(p) for p in fw.top))
        for l in fw.links:
            lines.append(f"    meet {l.meet}: {l.left_chain} | {l.right_chain}")
        lines.append(f"    terminal {fw.terminal_nice_witness}")
    lines.append(f"  newstead={str(r.newstead_condition).lower()}"
                 f"  gcd_corollary={str(r.gcd_corollary_holds).lower()}")
    q = r.quotient_identity
    ident = "n/a" if q is None else f"{q.lhs}={q.rhs} ({'ok' if q.equal else 'MISMATCH'})"
    lines.append(f"  dim M={r.moduli_dim}  quotient identity {ident}")
    return "\n".join(lines) + "\n"


def serialize_report(r: ClassificationReport, fmt: str = "json") -> str:
    if fmt == "json":
        return to_json(r)
    if fmt == "csv":
        return to_csv([r])
    if fmt == "text":
        return to_text(r)
    raise ValueError(f"unknown format {fmt!r}")


# -- matrix files -----------------------------------------------------------

def parse_rational(token: str, line: int, column: int) -> Fraction:
    tok = token.strip()
    try:
        if "/" in tok:
            p, q = tok.split("/")
            value = Fraction(int(p), int(q))
        else:
            value = Fraction(int(tok))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"malformed rational {tok!r}", line, column) from None
    return value


def parse_matrices(text: str) -> list[list[list[Fraction]]]:
    """Comma-separated rationals, one row per line; blank lines separate matrices."""
    mats: list[list[list[Fraction]]] = []
    cur: list[list[Fraction]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            if cur:
                mats.append(cur)
                cur = []
            continue
        row = []
        col = 1
        for tok in raw.split(","):
            row.append(parse_rational(tok, lineno, col))
            col += len(tok) + 1
        if cur and len(row) != len(cur[0]):
            raise ParseError(f"expected {len(cur[0])} entries, got {len(row)}", lineno, 1)
        cur.append(row)
    if cur:
        mats.append(cur)
    return mats


def format_matrix(rows: Iterable[Iterable[Fraction]]) -> str:
    return "".join(",".join(str(x) for x in r) + "\n" for r in rows)
