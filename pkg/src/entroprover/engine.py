"""Proof systems: a pool of inequalities plus one inference rule.

A step picks an inequality from the conic closure of the pool, applies the
system's rule and adds the conclusion (balanced first, for the ``+b``
systems).  Derivations are written as line-oriented scripts; see
:func:`run_script`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import rules
from .balance import balance, is_balanced, is_balanced_for
from .expr import ParseError, canonical, render
from .linform import LinForm, VarContext
from .shannon import conic_membership, elementals


class Provenance(str, Enum):
    ELEMENTAL = "elemental"
    GIVEN = "given"
    ZY = "zy"
    MMRV = "mmrv"
    BALANCE = "balance"
    SUBST = "subst"
    COMBINATION = "combination"


class SystemKind(str, Enum):
    ZY = "zy"
    ZY_B = "zy+b"
    R = "r"
    R_B = "r+b"

    @property
    def rule(self) -> str:
        return "zy" if self in (SystemKind.ZY, SystemKind.ZY_B) else "mmrv"

    @property
    def balances(self) -> bool:
        return self in (SystemKind.ZY_B, SystemKind.R_B)


@dataclass(frozen=True)
class Entry:
    name: str
    form: LinForm
    provenance: Provenance


@dataclass(frozen=True)
class Pool:
    """Immutable pool.  With ``shannon_base`` set, the elemental inequalities
    of whatever ground set a query lives on are implicitly members; this lets
    derivations move between ground sets through substitution."""

    entries: tuple[Entry, ...] = ()
    shannon_base: bool = True

    def __len__(self):
        return len(self.entries)

    def __contains__(self, name: str) -> bool:
        return any(e.name == name for e in self.entries)

    def get(self, name: str) -> Entry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(f"no pool entry named {name!r}")

    def add(self, entry: Entry) -> "Pool":
        if entry.name in self:
            raise ValueError(f"duplicate pool entry name {entry.name!r}")
        if any(e.form == entry.form for e in self.entries):
            return self
        return Pool(self.entries + (entry,), self.shannon_base)

    def generators(self, ctx: VarContext) -> list[tuple[str, LinForm]]:
        """Entries usable over ``ctx`` (their variables must all occur in it)."""
        names = set(ctx.names)
        out = [(e.name, e.form.reindex(ctx)) for e in self.entries if set(e.form.ctx.names) <= names]
        if self.shannon_base:
            seen = {f for _, f in out}
            for el in elementals(ctx):
                if el.form not in seen:
                    out.append((el.description, el.form))
        return out


def init_pool(ctx: VarContext) -> Pool:
    return Pool(tuple(Entry(el.description, el.form, Provenance.ELEMENTAL) for el in elementals(ctx)))


def pick(pool: Pool, combo: Sequence[tuple[str, Fraction | int]]) -> LinForm:
    """Nonnegative combination of named pool entries."""
    total = None
    for name, lam in combo:
        lam = Fraction(lam)
        if lam < 0:
            raise ValueError(f"negative coefficient {lam} for {name!r}")
        form = pool.get(name).form * lam
        if total is None:
            total = form
        else:
            if set(form.ctx.names) != set(total.ctx.names):
                raise ValueError("cannot combine entries over different ground sets")
            total = total + form
    if total is None:
        raise ValueError("empty combination")
    return total


@dataclass(frozen=True)
class Provability:
    combination: dict[str, Fraction] | None
    witness: dict[int, Fraction] | None

    def __bool__(self):
        return self.combination is not None


def provable(pool: Pool, target: LinForm) -> Provability:
    gens = pool.generators(target.ctx)
    combo, vec = conic_membership([f for _, f in gens], target)
    if combo is None:
        return Provability(None, vec)
    return Provability({gens[j][0]: w for j, w in sorted(combo.items())}, None)


def infer(kind: SystemKind, premise: LinForm, p: rules.Partition) -> LinForm:
    """Rule output for ``kind`` (unbalanced)."""
    if kind.rule == "zy":
        return rules.apply_zy(premise, p)
    return rules.apply_mmrv(premise, p)


def step(
    pool: Pool,
    kind: SystemKind,
    combo: Sequence[tuple[str, Fraction | int]],
    p: rules.Partition,
    name: str | None = None,
) -> Pool:
    premise = pick(pool, combo)
    return _add_conclusion(pool, kind, infer(kind, premise, p), name)


def step_from(pool: Pool, kind: SystemKind, premise: LinForm, p: rules.Partition, name: str | None = None) -> Pool:
    """Like :func:`step` but the premise is given as a form and checked for
    membership in the closure of the pool."""
    if not provable(pool, premise):
        raise ValueError("premise is not in the conic closure of the pool")
    return _add_conclusion(pool, kind, infer(kind, premise, p), name)


def _add_conclusion(pool, kind, concl, name):
    if kind.balances:
        concl = balance(concl)
    name = name or f"{kind.rule}{len(pool)}"
    prov = Provenance.ZY if kind.rule == "zy" else Provenance.MMRV
    return pool.add(Entry(name, concl, prov))


# ---------------------------------------------------------------------------
# derivation scripts


class ScriptError(Exception):
    def __init__(self, msg: str, lineno: int | None = None, line: str | None = None):
        self.lineno = lineno
        self.line = line
        super().__init__(f"line {lineno}: {msg}" if lineno else msg)


class AssertionFailed(ScriptError):
    pass


@dataclass
class Record:
    lineno: int
    statement: str
    kind: str  # "let" or "assert"
    name: str | None = None
    form: str | None = None
    ok: bool = True
    detail: str = ""
    pools: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        d = {"line": self.lineno, "statement": self.statement, "kind": self.kind, "ok": self.ok}
        if self.name is not None:
            d["name"] = self.name
        if self.form is not None:
            d["form"] = self.form
        if self.detail:
            d["detail"] = self.detail
        if self.pools:
            d["pools"] = self.pools
        return d


@dataclass
class Transcript:
    records: list[Record] = field(default_factory=list)
    forms: dict[str, LinForm] = field(default_factory=dict)
    pools: dict[SystemKind, Pool] = field(default_factory=dict)
    error: str | None = None
    assertion_failed: bool = False

    @property
    def ok(self) -> bool:
        return self.error is None and all(r.ok for r in self.records)

    def text(self) -> str:
        out = []
        for r in self.records:
            if r.kind == "let":
                out.append(f"{r.name} := {r.form}")
                if r.pools:
                    out.append(f"  added to: {', '.join(r.pools)}")
            else:
                out.append(f"{r.statement}: {'ok' if r.ok else 'FAILED'}")
            if r.detail:
                out.append(f"  {r.detail}")
        if self.error:
            out.append(f"error: {self.error}")
        return "\n".join(out) + ("\n" if out else "")

    def as_dict(self) -> dict:
        return {"ok": self.ok, "error": self.error, "records": [r.as_dict() for r in self.records]}


_LET_RE = re.compile(r"let\s+([A-Za-z_][A-Za-z0-9_']*)\s*=\s*(.+)\Z")
_PART_RE = re.compile(r"z\s*=\s*(\w+)\s+x\s*=\s*\{([^}]*)\}\s+y\s*=\s*\{([^}]*)\}\s*\Z")
_SUBST_RE = re.compile(r"(\w+)\s*->\s*(\w+)\Z")
_COMBO_ITEM_RE = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_']*)\s*:\s*(-?\d+(?:/\d+)?)\s*\Z")


def _varlist(text: str) -> list[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def _unquote(text: str) -> str:
    text = text.strip()
    m = re.fullmatch(r'canonical\(\s*"(.*)"\s*\)', text)
    if m:
        return m.group(1)
    if len(text) >= 2 and text[0] == text[-1] and text[0] in "\"'":
        return text[1:-1]
    return text


class _Interpreter:
    def __init__(self):
        self.t = Transcript()
        self.t.pools = {k: Pool() for k in SystemKind}
        # pools are immutable, so LP answers can be shared between pools and asserts
        self._lp: dict = {}

    # helpers
    def form(self, name: str) -> LinForm:
        try:
            return self.t.forms[name]
        except KeyError:
            raise ScriptError(f"undefined name {name!r}") from None

    def provable(self, pool: Pool, f: LinForm) -> Provability:
        gens = pool.generators(f.ctx)
        key = (tuple(g for _, g in gens), f)
        if key not in self._lp:
            self._lp[key] = conic_membership([g for _, g in gens], f)
        combo, vec = self._lp[key]
        if combo is None:
            return Provability(None, vec)
        return Provability({gens[j][0]: w for j, w in sorted(combo.items())}, None)

    def in_pool(self, kind: SystemKind, f: LinForm) -> bool:
        return bool(self.provable(self.t.pools[kind], f))

    def add(self, kind: SystemKind, name: str, f: LinForm, prov: Provenance):
        pool = self.t.pools[kind]
        if name in pool:
            raise ScriptError(f"name {name!r} already used in pool {kind.value}")
        self.t.pools[kind] = pool.add(Entry(name, f, prov))

    def bind(self, name: str, f: LinForm):
        if name in self.t.forms:
            raise ScriptError(f"name {name!r} is already bound")
        self.t.forms[name] = f

    def operand(self, text: str) -> LinForm:
        text = text.strip()
        if text in self.t.forms:
            return self.t.forms[text]
        return canonical(_unquote(text))

    # statements
    def run_line(self, lineno: int, line: str):
        if line.startswith("let"):
            m = _LET_RE.match(line)
            if not m:
                raise ScriptError("malformed let statement")
            self.let(lineno, line, m.group(1), m.group(2).strip())
        elif line.startswith("assert"):
            self.assertion(lineno, line, line[len("assert"):].strip())
        else:
            raise ScriptError(f"unknown statement {line.split()[0]!r}")

    def let(self, lineno, line, name, rhs):
        head, _, rest = rhs.partition(" ")
        rest = rest.strip()
        rec = Record(lineno, line, "let", name)
        if head == "combo":
            f = self.combo(rest)
        elif head in ("zy", "mmrv"):
            src, p = self.partitioned(rest)
            prem = self.form(src)
            kinds = [k for k in SystemKind if k.rule == head]
            f = infer(kinds[0], prem, p)
            for k in kinds:
                if self.in_pool(k, prem):
                    self.add(k, name, balance(f) if k.balances else f, Provenance(head))
                    rec.pools.append(k.value)
            if not rec.pools:
                raise ScriptError(f"premise {src!r} is not in the closure of any {head} pool")
        elif head in ("zy2mmrv", "mmrv2zy"):
            src, p = self.partitioned(rest)
            prem = self.form(src)
            if head == "zy2mmrv":
                f = rules.zy_premise_to_mmrv_premise(rules.decompose_zy(prem, p))
            else:
                f = rules.mmrv_premise_to_zy_premise(prem, p)
            rec.detail = f"from {src} ({p.describe()})"
        elif head == "balance":
            src = self.form(rest)
            f = balance(src)
            for k in (SystemKind.ZY_B, SystemKind.R_B):
                if self.in_pool(k, src):
                    self.add(k, name, f, Provenance.BALANCE)
                    rec.pools.append(k.value)
        elif head == "subst":
            parts = rest.split(None, 1)
            m = _SUBST_RE.match(parts[1].strip()) if len(parts) == 2 else None
            if not m:
                raise ScriptError("expected: subst <name> <var>-><var>")
            src = self.form(parts[0])
            f = rules.substitute(src, m.group(1), m.group(2))
            for k in SystemKind:
                if self.in_pool(k, src):
                    self.add(k, name, f, Provenance.SUBST)
                    rec.pools.append(k.value)
        else:
            f = canonical(_unquote(rhs))
        self.bind(name, f)
        rec.form = render(f)
        self.t.records.append(rec)

    def combo(self, text: str) -> LinForm:
        total = None
        for item in text.split("+"):
            m = _COMBO_ITEM_RE.match(item)
            if not m:
                raise ScriptError(f"bad combination item {item.strip()!r}")
            lam = Fraction(m.group(2))
            if lam < 0:
                raise ScriptError(f"negative coefficient in combination: {item.strip()}")
            f = self.form(m.group(1)) * lam
            total = f if total is None else total + f
        if total is None:
            raise ScriptError("empty combination")
        return total

    def partitioned(self, text: str):
        parts = text.split(None, 1)
        if len(parts) != 2:
            raise ScriptError("expected: <name> z=<var> x={...} y={...}")
        m = _PART_RE.match(parts[1].strip())
        if not m:
            raise ScriptError("expected partition z=<var> x={...} y={...}")
        f = self.form(parts[0])
        p = rules.Partition.of(f.ctx, m.group(1), _varlist(m.group(2)), _varlist(m.group(3)))
        return parts[0], p

    def assertion(self, lineno, line, body):
        rec = Record(lineno, line, "assert")
        words = body.split(None, 1)
        verb = words[0] if words else ""
        arg = words[1].strip() if len(words) > 1 else ""
        if verb in ("shannon", "not-shannon"):
            res = self.provable(Pool(), self.form(arg))
            rec.ok = bool(res) == (verb == "shannon")
            rec.detail = f"certificate with {len(res.combination)} elementals" if res else "witness found"
        elif verb == "equal":
            a, _, b = arg.partition(" ")
            lhs, rhs = self.form(a), self.operand(b)
            rec.ok = lhs == rhs
            if not rec.ok:
                rec.detail = f"{render(lhs)}  vs  {render(rhs)}"
        elif verb == "balanced":
            m = re.fullmatch(r"(\S+)(?:\s+(for|except)\s+(\w+))?", arg)
            if not m:
                raise ScriptError("expected: assert balanced <name> [for|except <var>]")
            f = self.form(m.group(1))
            if m.group(2) == "for":
                rec.ok = is_balanced_for(f, m.group(3))
            elif m.group(2) == "except":
                f.ctx.index(m.group(3))
                rec.ok = all(is_balanced_for(f, v) for v in f.ctx.names if v != m.group(3))
            else:
                rec.ok = is_balanced(f)
        elif verb in ("provable", "not-provable"):
            m = re.fullmatch(r"(\S+)\s+in\s+(\S+)", arg)
            if not m:
                raise ScriptError(f"expected: assert {verb} <name> in <system>")
            try:
                kind = SystemKind(m.group(2))
            except ValueError:
                raise ScriptError(f"unknown system {m.group(2)!r}") from None
            res = self.provable(self.t.pools[kind], self.form(m.group(1)))
            rec.ok = bool(res) == (verb == "provable")
            if res:
                rec.detail = "combination: " + " + ".join(f"{w}*[{n}]" for n, w in res.combination.items())
        else:
            raise ScriptError(f"unknown assertion {verb!r}")
        self.t.records.append(rec)
        if not rec.ok:
            raise AssertionFailed(f"assertion failed: {line}", lineno, line)


def run_script(text: str) -> Transcript:
    """Execute a derivation script; stops at the first failure.

    The transcript is returned either way; its ``error`` is set on failure.
    """
    it = _Interpreter()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            it.run_line(lineno, line)
        except ScriptError as exc:
            it.t.assertion_failed = isinstance(exc, AssertionFailed)
            if exc.lineno is None:
                exc = ScriptError(str(exc), lineno, line)
            it.t.error = str(exc)
            break
        except (ParseError, rules.RuleShapeError, ValueError, KeyError) as exc:
            it.t.error = str(ScriptError(f"{type(exc).__name__}: {exc}", lineno, line))
            break
    return it.t


BUNDLED = Path(__file__).with_name("derivations")


def bundled_scripts() -> list[str]:
    return sorted(p.name for p in BUNDLED.glob("*.ips"))


def load_script(name_or_path: str | Path) -> str:
    path = Path(name_or_path)
    if path.exists():
        return path.read_text()
    bundled = BUNDLED / path.name
    if bundled.exists():
        return bundled.read_text()
    raise FileNotFoundError(f"no script {str(name_or_path)!r} (bundled: {', '.join(bundled_scripts())})")
