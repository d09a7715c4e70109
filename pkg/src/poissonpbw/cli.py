"""Command-line surface: problem files, structure checks, normal forms,
dimension tables, and the Lie-side cross-checks.

Problem files are line-oriented with named sections:

    [algebra]
    variables = X1, X2, X3
    weights = 15, 10, 6            # optional

    [bracket]
    kind = matrix                  # matrix | nambu | lie_poisson | symplectic | zero
    entry 1 2 = X3                 # upper-triangle entries, 1-based
    # nambu payload:  P = ...  and optional  Q = ...

    [lie]                          # required for kind = lie_poisson
    c 1 2 = 0, 0, 1                # [x_i, x_j] as a coefficient vector
    sigma 1 2 = 1                  # optional cocycle entries

    [ideal]
    generator = X1^2 + X2^2 + X3^2 # repeatable

A JSON file with the same fields is accepted as an alternative encoding.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from .core import (
    ParseError,
    Polynomial,
    TermOrder,
    VarContext,
    groebner,
    parse_polynomial,
    poly_to_string,
)
from .envelope import u_one, u_to_string
from .liepoisson import (
    crosscheck_with_envelope,
    gamma,
    gamma_inv,
    random_smash_element,
    smash_mul,
    sridharan_mul,
    takiff_double,
)
from .pbwverify import (
    DimTable,
    NotPoissonIdealError,
    QuotientContext,
    envelope_quotient_map,
    pbw_verify,
    table_meta,
    verify_cell,
)
from .poisson import (
    LieData,
    PoissonStructure,
    check_jacobi,
    is_casimir,
    is_poisson_ideal,
    lie_poisson_structure,
    nambu_structure,
    symplectic_structure,
)

BRACKET_KINDS = ("matrix", "nambu", "lie_poisson", "symplectic", "zero")
BUILTIN_NAMES = (
    "cone",
    "klein-235",
    "nambu-cube",
    "weyl-2n",
    "so3-liepoisson",
    "zero-bracket",
)


class ProblemSpecError(ValueError):
    """Problem-file validation failure with an optional line location."""

    def __init__(self, message, line=None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


class ProblemSpec:
    """Parsed problem file: algebra, one bracket, optional lie and ideal."""

    __slots__ = ("names", "weights", "kind", "entries", "nambu_p", "nambu_q",
                 "lie_c", "lie_sigma", "ideal")

    def __init__(self, names, weights, kind, entries=None, nambu_p=None,
                 nambu_q=None, lie_c=None, lie_sigma=None, ideal=()):
        if kind not in BRACKET_KINDS:
            raise ProblemSpecError(f"unknown bracket kind {kind!r}")
        self.names = tuple(names)
        self.weights = tuple(weights) if weights is not None else None
        self.kind = kind
        self.entries = dict(entries) if entries else {}
        self.nambu_p = nambu_p
        self.nambu_q = nambu_q
        self.lie_c = lie_c
        self.lie_sigma = lie_sigma
        self.ideal = tuple(ideal)

    def ctx(self):
        if self.weights is None:
            return VarContext(self.names)
        return VarContext(self.names, weights=self.weights)

    def lie_data(self):
        if self.lie_c is None:
            raise ProblemSpecError("bracket kind lie_poisson needs a [lie] section")
        return LieData(self.names, self.lie_c, self.lie_sigma)

    def raw_matrix(self):
        """The bracket matrix without Jacobi validation (for check reports)."""
        ctx = self.ctx()
        n = len(self.names)
        z = Polynomial.zero(ctx)
        matrix = [[z for _ in range(n)] for _ in range(n)]
        if self.kind == "matrix":
            for (i, j), p in self.entries.items():
                matrix[i][j] = p
                matrix[j][i] = -p
        elif self.kind == "nambu":
            built = nambu_structure(self.nambu_p, self.nambu_q)
            matrix = [list(row) for row in built.matrix]
        elif self.kind == "lie_poisson":
            built = lie_poisson_structure(self.lie_data(), ctx)
            matrix = [list(row) for row in built.matrix]
        elif self.kind == "symplectic":
            built = symplectic_structure(ctx)
            matrix = [list(row) for row in built.matrix]
        return matrix

    def structure(self):
        ctx = self.ctx()
        if self.kind == "matrix":
            return PoissonStructure.from_upper_entries(ctx, self.entries)
        if self.kind == "nambu":
            return nambu_structure(self.nambu_p, self.nambu_q)
        if self.kind == "lie_poisson":
            return lie_poisson_structure(self.lie_data(), ctx)
        if self.kind == "symplectic":
            return symplectic_structure(ctx)
        return PoissonStructure.zero(ctx)

    def groebner_ideal(self, order=None):
        order = TermOrder("grevlex") if order is None else order
        gens = list(self.ideal) or [Polynomial.zero(self.ctx())]
        return groebner(gens, order=order)


# ---------------------------------------------------------------------------
# parsing and emission


def _split_list(value, line):
    items = [v.strip() for v in value.split(",")]
    if any(not v for v in items):
        raise ProblemSpecError("empty item in comma-separated list", line)
    return items


def _parse_sections(text):
    """[(section, [(line_no, key_parts, value), ...]), ...] preserving order."""
    sections = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if not name:
                raise ProblemSpecError("empty section name", lineno)
            current = (name, [])
            sections.append(current)
            continue
        if current is None:
            raise ProblemSpecError("entry before any [section] header", lineno)
        if "=" not in line:
            raise ProblemSpecError("expected key = value", lineno)
        key, value = line.split("=", 1)
        parts = key.split()
        if not parts:
            raise ProblemSpecError("missing key", lineno)
        current[1].append((lineno, parts, value.strip()))
    return sections


def _index_pair(parts, n, lineno):
    if len(parts) != 3:
        raise ProblemSpecError(f"key {parts[0]!r} needs two indices", lineno)
    try:
        i, j = int(parts[1]), int(parts[2])
    except ValueError:
        raise ProblemSpecError("indices must be integers", lineno) from None
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise ProblemSpecError(f"indices out of range: {parts[1]} {parts[2]}", lineno)
    return i - 1, j - 1


def parse_problem(text):
    """Parse the line format (or JSON when the text starts with '{')."""
    if text.lstrip().startswith("{"):
        try:
            return _problem_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ProblemSpecError(f"invalid JSON: {exc}") from None
    found = {}
    for name, items in _parse_sections(text):
        if name in found:
            raise ProblemSpecError(f"duplicate section [{name}]")
        found[name] = items
    unknown = set(found) - {"algebra", "bracket", "lie", "ideal"}
    if unknown:
        raise ProblemSpecError(f"unknown section [{sorted(unknown)[0]}]")
    if "algebra" not in found:
        raise ProblemSpecError("missing [algebra] section")
    if "bracket" not in found:
        raise ProblemSpecError("missing [bracket] section")

    names, weights = None, None
    for lineno, parts, value in found["algebra"]:
        key = " ".join(parts)
        if key == "variables":
            names = tuple(_split_list(value, lineno))
        elif key == "weights":
            try:
                weights = tuple(int(w) for w in _split_list(value, lineno))
            except ValueError:
                raise ProblemSpecError("weights must be integers", lineno) from None
        else:
            raise ProblemSpecError(f"unknown algebra key {key!r}", lineno)
    if names is None:
        raise ProblemSpecError("missing variables")
    if weights is not None and len(weights) != len(names):
        raise ProblemSpecError("weights length must match variables")
    ctx = VarContext(names, weights=weights) if weights else VarContext(names)

    def poly(value, lineno):
        try:
            return parse_polynomial(value, ctx)
        except ParseError as exc:
            raise ProblemSpecError(f"bad polynomial {value!r}: {exc}", lineno) from None

    kind = None
    entries = {}
    nambu_p = nambu_q = None
    for lineno, parts, value in found["bracket"]:
        key = parts[0]
        if key == "kind":
            if kind is not None:
                raise ProblemSpecError("more than one bracket kind", lineno)
            if value not in BRACKET_KINDS:
                raise ProblemSpecError(f"unknown bracket kind {value!r}", lineno)
            kind = value
        elif key == "entry":
            i, j = _index_pair(parts, len(names), lineno)
            if i > j:
                i, j = j, i
                p = -poly(value, lineno)
            else:
                p = poly(value, lineno)
            if (i, j) in entries:
                raise ProblemSpecError(f"duplicate entry {i + 1} {j + 1}", lineno)
            entries[(i, j)] = p
        elif key == "P":
            nambu_p = poly(value, lineno)
        elif key == "Q":
            nambu_q = poly(value, lineno)
        else:
            raise ProblemSpecError(f"unknown bracket key {key!r}", lineno)
    if kind is None:
        raise ProblemSpecError("bracket section needs a kind")
    if kind == "matrix" and not entries:
        raise ProblemSpecError("matrix bracket needs at least one entry")
    if kind != "matrix" and entries:
        raise ProblemSpecError("entry lines only belong to kind = matrix")
    if kind == "nambu" and nambu_p is None:
        raise ProblemSpecError("nambu bracket needs P")
    if kind != "nambu" and (nambu_p is not None or nambu_q is not None):
        raise ProblemSpecError("P/Q only belong to kind = nambu")

    lie_c = lie_sigma = None
    if "lie" in found:
        n = len(names)
        lie_c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        lie_sigma = [[Fraction(0)] * n for _ in range(n)]
        for lineno, parts, value in found["lie"]:
            key = parts[0]
            if key == "c":
                i, j = _index_pair(parts, n, lineno)
                vec = _split_list(value, lineno)
                if len(vec) != n:
                    raise ProblemSpecError(f"c vector needs {n} entries", lineno)
                try:
                    vec = [Fraction(v) for v in vec]
                except ValueError:
                    raise ProblemSpecError("c entries must be rationals", lineno) from None
                for k, v in enumerate(vec):
                    lie_c[i][j][k] = v
                    lie_c[j][i][k] = -v
            elif key == "sigma":
                i, j = _index_pair(parts, n, lineno)
                try:
                    v = Fraction(value)
                except ValueError:
                    raise ProblemSpecError("sigma entries must be rationals", lineno) from None
                lie_sigma[i][j] = v
                lie_sigma[j][i] = -v
            else:
                raise ProblemSpecError(f"unknown lie key {key!r}", lineno)
    if kind == "lie_poisson" and lie_c is None:
        raise ProblemSpecError("bracket kind lie_poisson needs a [lie] section")

    ideal = []
    if "ideal" in found:
        for lineno, parts, value in found["ideal"]:
            if " ".join(parts) != "generator":
                raise ProblemSpecError(f"unknown ideal key {parts[0]!r}", lineno)
            ideal.append(poly(value, lineno))

    return ProblemSpec(names, weights, kind, entries, nambu_p, nambu_q,
                       lie_c, lie_sigma, ideal)


def _problem_from_json(obj):
    if not isinstance(obj, dict):
        raise ProblemSpecError("top-level JSON value must be an object")
    algebra = obj.get("algebra") or {}
    names = algebra.get("variables")
    if not names:
        raise ProblemSpecError("missing algebra.variables")
    names = tuple(str(v) for v in names)
    weights = algebra.get("weights")
    weights = tuple(int(w) for w in weights) if weights else None
    ctx = VarContext(names, weights=weights) if weights else VarContext(names)

    def poly(value):
        try:
            return parse_polynomial(str(value), ctx)
        except ParseError as exc:
            raise ProblemSpecError(f"bad polynomial {value!r}: {exc}") from None

    def pair(key):
        parts = str(key).split()
        return _index_pair(["entry"] + parts, len(names), None)

    bracket = obj.get("bracket") or {}
    kind = bracket.get("kind")
    entries = {}
    for key, value in (bracket.get("entries") or {}).items():
        i, j = pair(key)
        entries[(i, j) if i < j else (j, i)] = poly(value) if i < j else -poly(value)
    nambu_p = poly(bracket["P"]) if "P" in bracket else None
    nambu_q = poly(bracket["Q"]) if "Q" in bracket else None

    lie_c = lie_sigma = None
    if "lie" in obj:
        n = len(names)
        lie_c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        lie_sigma = [[Fraction(0)] * n for _ in range(n)]
        for key, vec in (obj["lie"].get("c") or {}).items():
            i, j = pair(key)
            if len(vec) != n:
                raise ProblemSpecError(f"c vector needs {n} entries")
            for k, v in enumerate(Fraction(str(x)) for x in vec):
                lie_c[i][j][k] = v
                lie_c[j][i][k] = -v
        for key, v in (obj["lie"].get("sigma") or {}).items():
            i, j = pair(key)
            lie_sigma[i][j] = Fraction(str(v))
            lie_sigma[j][i] = -Fraction(str(v))
    ideal = [poly(g) for g in obj.get("ideal") or []]
    if kind not in BRACKET_KINDS:
        raise ProblemSpecError(f"unknown bracket kind {kind!r}")
    return ProblemSpec(names, weights, kind, entries, nambu_p, nambu_q,
                       lie_c, lie_sigma, ideal)


def emit_problem(spec):
    """Canonical line-format text; parse(emit(s)) emits the same bytes."""
    lines = ["[algebra]", f"variables = {', '.join(spec.names)}"]
    if spec.weights is not None:
        lines.append(f"weights = {', '.join(str(w) for w in spec.weights)}")
    lines.append("")
    lines.append("[bracket]")
    lines.append(f"kind = {spec.kind}")
    if spec.kind == "matrix":
        for (i, j) in sorted(spec.entries):
            lines.append(f"entry {i + 1} {j + 1} = {poly_to_string(spec.entries[(i, j)])}")
    elif spec.kind == "nambu":
        lines.append(f"P = {poly_to_string(spec.nambu_p)}")
        q = spec.nambu_q if spec.nambu_q is not None else Polynomial.one(spec.ctx())
        lines.append(f"Q = {poly_to_string(q)}")
    if spec.lie_c is not None:
        n = len(spec.names)
        lines.append("")
        lines.append("[lie]")
        for i in range(n):
            for j in range(i + 1, n):
                vec = spec.lie_c[i][j]
                if any(vec):
                    lines.append(
                        f"c {i + 1} {j + 1} = " + ", ".join(str(v) for v in vec)
                    )
        if spec.lie_sigma is not None:
            for i in range(n):
                for j in range(i + 1, n):
                    if spec.lie_sigma[i][j]:
                        lines.append(f"sigma {i + 1} {j + 1} = {spec.lie_sigma[i][j]}")
    if spec.ideal:
        lines.append("")
        lines.append("[ideal]")
        for g in spec.ideal:
            lines.append(f"generator = {poly_to_string(g)}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# built-in example gallery


def builtin_spec(name):
    if name == "cone":
        ctx = VarContext(("X1", "X2", "X3"))
        return ProblemSpec(
            ctx.names, None, "matrix",
            entries={
                (0, 1): parse_polynomial("X3", ctx),
                (0, 2): parse_polynomial("-X2", ctx),
                (1, 2): parse_polynomial("X1", ctx),
            },
            ideal=[parse_polynomial("X1^2 + X2^2 + X3^2", ctx)],
        )
    if name == "klein-235":
        ctx = VarContext(("X1", "X2", "X3"), weights=(15, 10, 6))
        p = parse_polynomial("X1^2 + X2^3 + X3^5", ctx)
        return ProblemSpec(
            ctx.names, ctx.weights, "nambu",
            nambu_p=p, nambu_q=Polynomial.one(ctx), ideal=[p],
        )
    if name == "nambu-cube":
        ctx = VarContext(("X1", "X2", "X3"))
        p = parse_polynomial("X1*X2*X3", ctx)
        return ProblemSpec(
            ctx.names, None, "nambu",
            nambu_p=p, nambu_q=Polynomial.one(ctx), ideal=[p],
        )
    if name == "weyl-2n":
        return ProblemSpec(("X", "Y"), None, "symplectic")
    if name == "so3-liepoisson":
        n = 3
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            c[i][j][k] = Fraction(1)
            c[j][i][k] = Fraction(-1)
        sigma = [[Fraction(0)] * n for _ in range(n)]
        return ProblemSpec(("X1", "X2", "X3"), None, "lie_poisson",
                           lie_c=c, lie_sigma=sigma)
    if name == "zero-bracket":
        return ProblemSpec(("X1", "X2", "X3"), None, "zero")
    raise ProblemSpecError(f"unknown example {name!r}")


def load_problem(ref):
    """Resolve a builtin name or a path to a ProblemSpec."""
    if ref in BUILTIN_NAMES:
        return builtin_spec(ref)
    path = Path(ref)
    if not path.exists():
        raise ProblemSpecError(f"no such builtin or file: {ref!r}")
    return parse_problem(path.read_text())


# ---------------------------------------------------------------------------
# envelope expression grammar: a(<poly>), b(<poly>), rationals, + - *, parens


def _tokenize_expression(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch in "ab" and i + 1 < len(text) and text[i + 1] == "(":
            close = text.find(")", i + 2)
            if close < 0:
                raise ParseError("unclosed generator call", i)
            tokens.append(("call", (ch, text[i + 2:close]), i))
            i = close + 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            if j < len(text) and text[j] == "/":
                j += 1
                if j == len(text) or not text[j].isdigit():
                    raise ParseError("malformed rational literal", i)
                while j < len(text) and text[j].isdigit():
                    j += 1
            tokens.append(("num", Fraction(text[i:j]), i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    return tokens


def parse_u_expression(text, ps):
    """Evaluate the expression to a normal-form envelope element."""
    from .envelope import u_alpha, u_beta, u_scale

    tokens = _tokenize_expression(text)
    pos = [0]

    def peek():
        return tokens[pos[0]] if pos[0] < len(tokens) else (None, None, len(text))

    def advance():
        tok = peek()
        pos[0] += 1
        return tok

    def atom():
        kind, value, at = advance()
        if kind == "call":
            gen, payload = value
            try:
                p = parse_polynomial(payload, ps.ctx)
            except ParseError as exc:
                raise ParseError(f"in {gen}(...): {exc}", at) from None
            return u_alpha(ps, p) if gen == "a" else u_beta(ps, p)
        if kind == "num":
            return u_scale(u_one(ps), value)
        if kind == "(":
            value = expr()
            kind, _, at = advance()
            if kind != ")":
                raise ParseError("expected )", at)
            return value
        raise ParseError("expected a(...), b(...), number, or (", at)

    def unary():
        if peek()[0] == "-":
            advance()
            return -unary()
        return atom()

    def term():
        value = unary()
        while peek()[0] == "*":
            advance()
            value = value * unary()
        return value

    def expr():
        value = term()
        while peek()[0] in ("+", "-"):
            op = advance()[0]
            rhs = term()
            value = value + rhs if op == "+" else value - rhs
        return value

    if not tokens:
        raise ParseError("empty expression", 0)
    value = expr()
    if pos[0] != len(tokens):
        raise ParseError("trailing input", tokens[pos[0]][2])
    return value


# ---------------------------------------------------------------------------
# commands


def cmd_check(spec, out):
    failures = 0
    ctx = spec.ctx()
    ok, witness, residual = check_jacobi(ctx, spec.raw_matrix())
    if ok:
        out.write("jacobi: PASS\n")
    else:
        failures += 1
        triple = ", ".join(ctx.names[i] for i in witness)
        out.write(f"jacobi: FAIL on ({triple}): residual {poly_to_string(residual)}\n")
    if not ok:
        return 1
    ps = spec.structure()
    gb = spec.groebner_ideal()
    if is_poisson_ideal(ps, gb):
        out.write("poisson-ideal: PASS\n")
    else:
        failures += 1
        out.write("poisson-ideal: FAIL\n")
    for g in spec.ideal:
        answer = "yes" if is_casimir(ps, g) else "no"
        out.write(f"casimir {poly_to_string(g)}: {answer}\n")
    return 1 if failures else 0


def cmd_nf(spec, expression, out, order=None):
    ps = spec.structure()
    u = parse_u_expression(expression, ps)
    if spec.ideal:
        qc = QuotientContext(ps, spec.groebner_ideal(order))
        out.write(str(envelope_quotient_map(qc, u)) + "\n")
    else:
        out.write(u_to_string(u) + "\n")
    return 0


_WORKER_STATE = {}


def _table_worker_init(spec_text, order_kind, margin_budget):
    spec = parse_problem(spec_text)
    qc = QuotientContext(spec.structure(), spec.groebner_ideal(TermOrder(order_kind)))
    _WORKER_STATE["qc"] = qc
    _WORKER_STATE["budget"] = margin_budget


def _table_worker(cell):
    k, d = cell
    return verify_cell(_WORKER_STATE["qc"], k, d, _WORKER_STATE["budget"])


def cmd_pbw_table(spec, kmax, dmax, out, margin_budget=4, fmt="pretty",
                  jobs=1, order=None):
    if kmax < 0 or dmax < 0:
        raise ProblemSpecError("bounds must be >= 0")
    order = TermOrder("grevlex") if order is None else order
    qc = QuotientContext(spec.structure(), spec.groebner_ideal(order))
    if jobs <= 1:
        table = pbw_verify(qc, kmax, dmax, margin_budget)
    else:
        cells_by_key = {}
        witnesses = []
        grid = [(k, d) for k in range(kmax + 1) for d in range(dmax + 1)]
        with ProcessPoolExecutor(
            max_workers=jobs,
            initializer=_table_worker_init,
            initargs=(emit_problem(spec), order.kind, margin_budget),
        ) as pool:
            for cell, witness in pool.map(_table_worker, grid):
                cells_by_key[(cell["k"], cell["d"])] = cell
                if witness is not None:
                    witnesses.append(witness)
        meta = table_meta(qc, margin_budget)
        if witnesses:
            meta["witnesses"] = sorted(witnesses, key=lambda w: (w["k"], w["d"]))
        table = DimTable([cells_by_key[key] for key in grid], meta)
    if fmt == "json":
        out.write(table.to_json(indent=2) + "\n")
    elif fmt == "csv":
        out.write(table.to_csv())
    else:
        out.write(table.pretty())
    if table.has_fail:
        return 1
    if table.has_unstable:
        return 2
    return 0


def cmd_smash_check(spec, out, trials=100, max_deg=3, seed=0):
    import random

    lie = spec.lie_data()
    failures = crosscheck_with_envelope(lie, trials=trials, max_deg=max_deg, seed=seed)
    out.write(f"envelope crosscheck: {trials} trials, {len(failures)} failures\n")
    rng = random.Random(seed)
    assoc_bad = 0
    assoc_trials = max(1, trials // 4)
    for _ in range(assoc_trials):
        u = random_smash_element(lie, rng)
        v = random_smash_element(lie, rng)
        w = random_smash_element(lie, rng)
        if smash_mul(smash_mul(u, v), w) != smash_mul(u, smash_mul(v, w)):
            assoc_bad += 1
    out.write(f"associativity: {assoc_trials} trials, {assoc_bad} failures\n")
    ok = not failures and not assoc_bad
    out.write(f"smash-check: {'PASS' if ok else 'FAIL'}\n")
    return 0 if ok else 1


def cmd_sridharan_check(spec, out, trials=100, seed=0):
    import random

    lie = spec.lie_data()
    double = takiff_double(lie)  # constructor re-validates Jacobi + cocycle
    out.write(f"double: dim {len(double.names)}, validation PASS\n")
    rng = random.Random(seed)
    rt_bad = morph_bad = 0
    for _ in range(trials):
        u = random_smash_element(lie, rng)
        v = random_smash_element(lie, rng)
        if gamma_inv(gamma(u)) != u:
            rt_bad += 1
        if gamma(smash_mul(u, v)) != sridharan_mul(gamma(u), gamma(v)):
            morph_bad += 1
    out.write(f"gamma round-trip: {trials} trials, {rt_bad} failures\n")
    out.write(f"gamma morphism: {trials} trials, {morph_bad} failures\n")
    ok = not rt_bad and not morph_bad
    out.write(f"sridharan-check: {'PASS' if ok else 'FAIL'}\n")
    return 0 if ok else 1


def cmd_examples(name, out):
    if name is None:
        for builtin in BUILTIN_NAMES:
            out.write(builtin + "\n")
        return 0
    out.write(emit_problem(builtin_spec(name)))
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="poissonpbw",
        description="Exact checks for polynomial Poisson structures and their "
        "enveloping normal-form algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_problem(p):
        p.add_argument("problem", help="builtin name or problem-file path")

    p = sub.add_parser("check", help="validate bracket, ideal, and Casimirs")
    add_problem(p)

    p = sub.add_parser("nf", help="normal form of an envelope expression")
    add_problem(p)
    p.add_argument("expression", help="e.g. 'b(X2)*b(X1) - 2*a(X3)'")
    p.add_argument("--order", default="grevlex", choices=("grevlex", "grlex", "lex"))

    p = sub.add_parser("pbw-table", help="bigraded dimension comparison table")
    add_problem(p)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--dmax", type=int, required=True)
    p.add_argument("--margin-budget", type=int, default=4)
    p.add_argument("--format", default="pretty", choices=("pretty", "csv", "json"))
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--order", default="grevlex", choices=("grevlex", "grlex", "lex"))

    p = sub.add_parser("smash-check", help="smash product vs envelope cross-check")
    add_problem(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-deg", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("sridharan-check", help="doubled algebra and relabel checks")
    add_problem(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("examples", help="print a builtin problem file")
    p.add_argument("name", nargs="?", default=None)
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    out = sys.stdout
    try:
        if args.command == "examples":
            return cmd_examples(args.name, out)
        if args.command == "check":
            return cmd_check(load_problem(args.problem), out)
        if args.command == "nf":
            return cmd_nf(load_problem(args.problem), args.expression, out,
                          order=TermOrder(args.order))
        if args.command == "pbw-table":
            return cmd_pbw_table(
                load_problem(args.problem), args.kmax, args.dmax, out,
                margin_budget=args.margin_budget, fmt=args.format,
                jobs=args.jobs, order=TermOrder(args.order),
            )
        if args.command == "smash-check":
            return cmd_smash_check(load_problem(args.problem), out,
                                   trials=args.trials, max_deg=args.max_deg,
                                   seed=args.seed)
        if args.command == "sridharan-check":
            return cmd_sridharan_check(load_problem(args.problem), out,
                                       trials=args.trials, seed=args.seed)
    except (ProblemSpecError, NotPoissonIdealError, ParseError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    raise AssertionError("unreachable command")


if __name__ == "__main__":
    sys.exit(main())
