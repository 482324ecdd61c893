"""Sequences of rationals modulo almost-everywhere agreement.

Two decidable sequence classes are supported: rational functions of the index
and eventually periodic sequences.  Comparisons return three-valued verdicts:
a relation can hold on a cofinite set (true a.e.), a finite set (false a.e.),
or on a set whose measure would depend on the choice of ultrafilter.  The
latter only happens for eventually periodic inputs.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from .hyperreal import Classification, Hyperreal
from .poly import Poly


class GermError(Exception):
    pass


class MixedClasses(GermError):
    """Operands live in different sequence classes and neither is constant."""


class AlmostEverywhereZeroDivisor(GermError):
    pass


class UltrafilterDependentZeroDivisor(GermError):
    """Inverse of a germ whose zero set is periodic and nontrivial."""


class QuantifierPresent(GermError):
    pass


class GermSyntaxError(GermError):
    pass


class AeVerdict(Enum):
    TRUE_AE = "true-ae"
    FALSE_AE = "false-ae"
    ULTRAFILTER_DEPENDENT = "ultrafilter-dependent"

    def negate(self) -> "AeVerdict":
        if self is AeVerdict.TRUE_AE:
            return AeVerdict.FALSE_AE
        if self is AeVerdict.FALSE_AE:
            return AeVerdict.TRUE_AE
        return self


def _verdict_from_flags(flags) -> AeVerdict:
    flags = list(flags)
    if all(flags):
        return AeVerdict.TRUE_AE
    if not any(flags):
        return AeVerdict.FALSE_AE
    return AeVerdict.ULTRAFILTER_DEPENDENT


class RationalGerm:
    """Germ of n -> num(n)/den(n); the denominator is eventually nonzero."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=Poly.ONE):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if not isinstance(den, Poly):
            den = Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("denominator polynomial is zero")
        if num.is_zero():
            num, den = Poly.ZERO, Poly.ONE
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = den.leading
            if lead != 1:
                num, den = num.scale(1 / lead), den.scale(1 / lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *args):
        raise AttributeError("RationalGerm is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalGerm) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash(("rf", self.num, self.den))

    def __repr__(self) -> str:
        return f"rf(({self.num.to_str('n')})/({self.den.to_str('n')}))"

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("germ is not constant")
        return self.num.coeff(0) / self.den.coeff(0)

    def value_at(self, n: int) -> Fraction:
        d = self.den.eval(n)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at n={n}")
        return self.num.eval(n) / d

    def defined_from(self) -> int:
        """An index beyond every root of the denominator."""
        return _cauchy_bound(self.den)


class PeriodicGerm:
    """Eventually periodic sequence, normalized to minimal period and preperiod."""

    __slots__ = ("preperiod", "period")

    def __init__(self, preperiod, period):
        pre = [Fraction(c) if not isinstance(c, (int, Fraction)) else c for c in preperiod]
        per = [Fraction(c) if not isinstance(c, (int, Fraction)) else c for c in period]
        if not per:
            raise ValueError("period must be nonempty")
        # minimal period: the least divisor of the block length that tiles it
        length = len(per)
        for d in range(1, length + 1):
            if length % d == 0 and all(per[i] == per[i % d] for i in range(length)):
                per = per[:d]
                break
        # absorb preperiod entries that already match the periodic tail
        while pre and pre[-1] == per[-1]:
            pre.pop()
            per = [per[-1]] + per[:-1]
        object.__setattr__(self, "preperiod", tuple(pre))
        object.__setattr__(self, "period", tuple(per))

    def __setattr__(self, *args):
        raise AttributeError("PeriodicGerm is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PeriodicGerm)
            and self.preperiod == other.preperiod
            and self.period == other.period
        )

    def __hash__(self) -> int:
        return hash(("ep", self.preperiod, self.period))

    def __repr__(self) -> str:
        pre = ",".join(str(c) for c in self.preperiod)
        per = ",".join(str(c) for c in self.period)
        return f"ep([{pre}];[{per}])"

    def is_constant(self) -> bool:
        return not self.preperiod and len(self.period) == 1

    def constant_value(self) -> Fraction:
        if len(self.period) != 1:
            raise ValueError("germ is not eventually constant")
        return Fraction(self.period[0])

    def value_at(self, n: int) -> Fraction:
        """Value at index n, counting from n = 1."""
        i = n - 1
        if i < len(self.preperiod):
            return Fraction(self.preperiod[i])
        return Fraction(self.period[(i - len(self.preperiod)) % len(self.period)])


Germ = Union[RationalGerm, PeriodicGerm]


def embed_constant(c) -> PeriodicGerm:
    """The constant sequence c, c, c, ..."""
    return PeriodicGerm((), (Fraction(c),))


def _cauchy_bound(p: Poly) -> int:
    """Integer beyond every real root of p (at least 1)."""
    if p.degree <= 0:
        return 1
    lead = abs(p.leading)
    biggest = max(abs(c) for c in p.coeffs)
    return 1 + math.ceil(biggest / lead)


# -- class alignment -----------------------------------------------------------


def _to_rational(g: Germ) -> Optional[RationalGerm]:
    if isinstance(g, RationalGerm):
        return g
    if len(g.period) == 1:
        # eventually constant: a.e. equal to the constant rational function
        return RationalGerm(Poly.const(g.period[0]))
    return None


def _to_periodic(g: Germ) -> Optional[PeriodicGerm]:
    if isinstance(g, PeriodicGerm):
        return g
    if g.is_constant():
        return embed_constant(g.constant_value())
    return None


def _align_pair(a: Germ, b: Germ) -> tuple[Germ, Germ]:
    """Bring both germs into a common sequence class, or fail."""
    if isinstance(a, RationalGerm) and isinstance(b, RationalGerm):
        return a, b
    if isinstance(a, PeriodicGerm) and isinstance(b, PeriodicGerm):
        return a, b
    ra, rb = _to_rational(a), _to_rational(b)
    if ra is not None and rb is not None:
        return ra, rb
    pa, pb = _to_periodic(a), _to_periodic(b)
    if pa is not None and pb is not None:
        return pa, pb
    raise MixedClasses(f"cannot mix {type(a).__name__} with {type(b).__name__}")


def _aligned_tail(a: PeriodicGerm, b: PeriodicGerm) -> tuple[int, int]:
    """Common preperiod length and period length for a pair."""
    pre = max(len(a.preperiod), len(b.preperiod))
    la, lb = len(a.period), len(b.period)
    return pre, la * lb // math.gcd(la, lb)


# -- arithmetic ------------------------------------------------------------------


def add(a: Germ, b: Germ) -> Germ:
    a, b = _align_pair(a, b)
    if isinstance(a, RationalGerm):
        return RationalGerm(a.num * b.den + b.num * a.den, a.den * b.den)
    return _pointwise(a, b, lambda x, y: x + y)


def sub(a: Germ, b: Germ) -> Germ:
    return add(a, neg(b))


def mul(a: Germ, b: Germ) -> Germ:
    a, b = _align_pair(a, b)
    if isinstance(a, RationalGerm):
        return RationalGerm(a.num * b.num, a.den * b.den)
    return _pointwise(a, b, lambda x, y: x * y)


def neg(a: Germ) -> Germ:
    if isinstance(a, RationalGerm):
        return RationalGerm(-a.num, a.den)
    return PeriodicGerm([-c for c in a.preperiod], [-c for c in a.period])


def inv(a: Germ) -> Germ:
    if isinstance(a, RationalGerm):
        if a.num.is_zero():
            raise AlmostEverywhereZeroDivisor("inverse of the zero germ")
        return RationalGerm(a.den, a.num)
    zeros = sum(1 for c in a.period if c == 0)
    if zeros == len(a.period):
        raise AlmostEverywhereZeroDivisor("inverse of the zero germ")
    if zeros:
        raise UltrafilterDependentZeroDivisor(
            "zero set is one or more residue classes; the inverse depends on the ultrafilter"
        )
    # preperiod zeros sit in a finite set; any values will do there
    pre = [Fraction(0) if c == 0 else 1 / Fraction(c) for c in a.preperiod]
    return PeriodicGerm(pre, [1 / Fraction(c) for c in a.period])


def div(a: Germ, b: Germ) -> Germ:
    return mul(a, inv(b))


def _pointwise(a: PeriodicGerm, b: PeriodicGerm, op) -> PeriodicGerm:
    pre, length = _aligned_tail(a, b)
    prefix = [op(a.value_at(i + 1), b.value_at(i + 1)) for i in range(pre)]
    period = [op(a.value_at(pre + j + 1), b.value_at(pre + j + 1)) for j in range(length)]
    return PeriodicGerm(prefix, period)


# -- almost-everywhere comparisons ----------------------------------------------


def _eventual_sign(a: RationalGerm) -> int:
    """Sign of a(n) for all large n: 0 exactly when a is the zero germ."""
    if a.num.is_zero():
        return 0
    s = 1 if a.num.leading > 0 else -1
    # canonical denominators are monic, but stay safe
    if a.den.leading < 0:
        s = -s
    return s


def ae_compare(a: Germ, b: Germ) -> tuple[AeVerdict, AeVerdict]:
    """(equality verdict, strict-less verdict) in one pass."""
    a, b = _align_pair(a, b)
    if isinstance(a, RationalGerm):
        s = _eventual_sign(RationalGerm(b.num * a.den - a.num * b.den, a.den * b.den))
        eq = AeVerdict.TRUE_AE if s == 0 else AeVerdict.FALSE_AE
        lt = AeVerdict.TRUE_AE if s > 0 else AeVerdict.FALSE_AE
        return eq, lt
    pre, length = _aligned_tail(a, b)
    eq_flags = []
    lt_flags = []
    for j in range(length):
        va = a.value_at(pre + j + 1)
        vb = b.value_at(pre + j + 1)
        eq_flags.append(va == vb)
        lt_flags.append(va < vb)
    return _verdict_from_flags(eq_flags), _verdict_from_flags(lt_flags)


def ae_equal(a: Germ, b: Germ) -> AeVerdict:
    return ae_compare(a, b)[0]


def ae_less(a: Germ, b: Germ) -> AeVerdict:
    return ae_compare(a, b)[1]


# -- classification ----------------------------------------------------------------


class ResidueClassification:
    """Per-residue-class classification of an eventually periodic germ."""

    __slots__ = ("period", "classes")

    def __init__(self, period: int, classes):
        self.period = period
        self.classes = tuple(classes)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ResidueClassification)
            and self.period == other.period
            and self.classes == other.classes
        )

    def __repr__(self) -> str:
        names = ", ".join(c.value for c in self.classes)
        return f"ResidueClassification(period={self.period}: {names})"


def classify_germ(a: Germ) -> Union[Classification, ResidueClassification]:
    """Infinitesimal/appreciable/infinite, or a per-residue report.

    A definite answer needs the tail to settle against every rational: that
    holds for every rational-function germ, and for eventually periodic germs
    that are a.e. constant.  Other periodic germs get one verdict per residue
    class of the minimal period.
    """
    if isinstance(a, RationalGerm):
        if a.num.is_zero():
            return Classification.ZERO
        dn, dd = a.num.degree, a.den.degree
        if dn < dd:
            return Classification.INFINITESIMAL
        if dn == dd:
            return Classification.APPRECIABLE
        return Classification.INFINITE
    if len(a.period) == 1:
        c = a.period[0]
        return Classification.ZERO if c == 0 else Classification.APPRECIABLE
    return ResidueClassification(
        len(a.period),
        [Classification.ZERO if c == 0 else Classification.APPRECIABLE for c in a.period],
    )


def to_hyperreal(a: Germ) -> Hyperreal:
    """Order-preserving field embedding sending the germ of n to 1/e."""
    if isinstance(a, PeriodicGerm):
        r = _to_rational(a)
        if r is None:
            raise MixedClasses("only rational-function germs embed into the hyperreal field")
        a = r
    width = max(a.num.degree, a.den.degree) + 1
    return Hyperreal(a.num.reversed_to(width), a.den.reversed_to(width))


# -- quantifier-free transfer checking ----------------------------------------------
#
# formula := or ;  or := and {'or' and} ;  and := not {'and' not}
# not     := 'not' not | atom-or-group
# atom    := term REL term          REL in  = != < <= > >=
# group   := '(' formula ')'
# term    := factor {('+'|'-') factor} ;  factor := base {'*' base}
# base    := NUMBER | IDENT | '-' base | '(' term ')'


class _QfNode:
    pass


class _QfAtom(_QfNode):
    def __init__(self, rel, lhs, rhs):
        self.rel = rel
        self.lhs = lhs
        self.rhs = rhs


class _QfNot(_QfNode):
    def __init__(self, body):
        self.body = body


class _QfBin(_QfNode):
    def __init__(self, op, lhs, rhs):
        self.op = op
        self.lhs = lhs
        self.rhs = rhs


_QUANTIFIER_WORDS = {"forall", "exists", "∀", "∃"}
_WORD_OPS = {"and", "or", "not"}


def _tokenize_qf(text: str) -> list:
    symbols = {"¬": "not", "∧": "and", "∨": "or", "·": "*"}
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in symbols:
            out.append(symbols[ch])
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            if j < len(text) and text[j] == "/" and j + 1 < len(text) and text[j + 1].isdigit():
                j += 1
                while j < len(text) and text[j].isdigit():
                    j += 1
            out.append(("num", Fraction(text[i:j])))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word in _QUANTIFIER_WORDS:
                raise QuantifierPresent(f"quantifier {word!r} in a quantifier-free formula")
            out.append(word if word in _WORD_OPS else ("ident", word))
            i = j
            continue
        for op in ("<=", ">=", "!=", "<", ">", "=", "+", "-", "*", "/", "(", ")"):
            if text.startswith(op, i):
                out.append(op)
                i += len(op)
                break
        else:
            raise GermSyntaxError(f"unexpected character {ch!r} at position {i}")
    return out


class _QfParser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, tok):
        if self.peek() != tok:
            raise GermSyntaxError(f"expected {tok!r}, found {self.peek()!r}")
        self.pos += 1

    def parse(self):
        node = self.or_expr()
        if self.peek() is not None:
            raise GermSyntaxError(f"trailing tokens from {self.peek()!r}")
        return node

    def or_expr(self):
        node = self.and_expr()
        while self.peek() == "or":
            self.pos += 1
            node = _QfBin("or", node, self.and_expr())
        return node

    def and_expr(self):
        node = self.not_expr()
        while self.peek() == "and":
            self.pos += 1
            node = _QfBin("and", node, self.not_expr())
        return node

    def not_expr(self):
        if self.peek() == "not":
            self.pos += 1
            return _QfNot(self.not_expr())
        if self.peek() == "(":
            # could be a grouped formula or a parenthesized term; try the atom
            save = self.pos
            try:
                return self.atom()
            except GermSyntaxError:
                self.pos = save
            self.take("(")
            node = self.or_expr()
            self.take(")")
            return node
        return self.atom()

    def atom(self):
        lhs = self.term()
        rel = self.peek()
        if rel not in ("=", "!=", "<", "<=", ">", ">="):
            raise GermSyntaxError(f"expected a relation, found {rel!r}")
        self.pos += 1
        rhs = self.term()
        return _QfAtom(rel, lhs, rhs)

    def term(self):
        node = self.factor()
        while self.peek() in ("+", "-"):
            op = self.peek()
            self.pos += 1
            rhs = self.factor()
            node = ("add", node, rhs) if op == "+" else ("sub", node, rhs)
        return node

    def factor(self):
        node = self.base()
        while self.peek() in ("*", "/"):
            op = self.peek()
            self.pos += 1
            rhs = self.base()
            node = ("mul", node, rhs) if op == "*" else ("div", node, rhs)
        return node

    def base(self):
        tok = self.peek()
        if tok == "-":
            self.pos += 1
            return ("neg", self.base())
        if tok == "(":
            self.pos += 1
            node = self.term()
            self.take(")")
            return node
        if isinstance(tok, tuple) and tok[0] == "num":
            self.pos += 1
            return ("const", tok[1])
        if isinstance(tok, tuple) and tok[0] == "ident":
            self.pos += 1
            return ("var", tok[1])
        raise GermSyntaxError(f"expected a term, found {tok!r}")


def _term_vars(node, acc):
    kind = node[0]
    if kind == "var":
        acc.add(node[1])
    elif kind in ("add", "sub", "mul", "div"):
        _term_vars(node[1], acc)
        _term_vars(node[2], acc)
    elif kind == "neg":
        _term_vars(node[1], acc)


def _formula_vars(node, acc):
    if isinstance(node, _QfAtom):
        _term_vars(node.lhs, acc)
        _term_vars(node.rhs, acc)
    elif isinstance(node, _QfNot):
        _formula_vars(node.body, acc)
    else:
        _formula_vars(node.lhs, acc)
        _formula_vars(node.rhs, acc)


def _eval_term_germ(node, env) -> Germ:
    kind = node[0]
    if kind == "const":
        return embed_constant(node[1])
    if kind == "var":
        return env[node[1]]
    if kind == "neg":
        return neg(_eval_term_germ(node[1], env))
    a = _eval_term_germ(node[1], env)
    b = _eval_term_germ(node[2], env)
    if kind == "add":
        return add(a, b)
    if kind == "sub":
        return sub(a, b)
    if kind == "div":
        return div(a, b)
    return mul(a, b)


def _eval_term_at(node, env, n: int) -> Fraction:
    kind = node[0]
    if kind == "const":
        return node[1]
    if kind == "var":
        return env[node[1]].value_at(n)
    if kind == "neg":
        return -_eval_term_at(node[1], env, n)
    a = _eval_term_at(node[1], env, n)
    b = _eval_term_at(node[2], env, n)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "div":
        return a / b
    return a * b


def _atom_eventual_truth(atom: _QfAtom, env) -> bool:
    diff = sub(_eval_term_germ(atom.rhs, env), _eval_term_germ(atom.lhs, env))
    if isinstance(diff, PeriodicGerm):
        # happens only for atoms built from constants alone
        diff = _to_rational(diff)
    s = _eventual_sign(diff)
    return {
        "=": s == 0,
        "!=": s != 0,
        "<": s > 0,
        "<=": s >= 0,
        ">": s < 0,
        ">=": s <= 0,
    }[atom.rel]


def _formula_eventual_truth(node, env) -> bool:
    if isinstance(node, _QfAtom):
        return _atom_eventual_truth(node, env)
    if isinstance(node, _QfNot):
        return not _formula_eventual_truth(node.body, env)
    if node.op == "and":
        return _formula_eventual_truth(node.lhs, env) and _formula_eventual_truth(node.rhs, env)
    return _formula_eventual_truth(node.lhs, env) or _formula_eventual_truth(node.rhs, env)


def _formula_truth_at(node, env, n: int) -> bool:
    if isinstance(node, _QfAtom):
        lhs = _eval_term_at(node.lhs, env, n)
        rhs = _eval_term_at(node.rhs, env, n)
        return {
            "=": lhs == rhs,
            "!=": lhs != rhs,
            "<": lhs < rhs,
            "<=": lhs <= rhs,
            ">": lhs > rhs,
            ">=": lhs >= rhs,
        }[node.rel]
    if isinstance(node, _QfNot):
        return not _formula_truth_at(node.body, env, n)
    if node.op == "and":
        return _formula_truth_at(node.lhs, env, n) and _formula_truth_at(node.rhs, env, n)
    return _formula_truth_at(node.lhs, env, n) or _formula_truth_at(node.rhs, env, n)


def parse_qf(text: str):
    """Parse a quantifier-free formula over =, <, +, * and rational constants."""
    return _QfParser(_tokenize_qf(text)).parse()


def _align_environment(env: dict) -> tuple[dict, bool]:
    """Coerce every germ to one class; returns (env, is_rational_class)."""
    germs = list(env.values())
    if not germs:
        return env, True
    if all(isinstance(g, RationalGerm) for g in germs):
        return env, True
    if all(isinstance(g, PeriodicGerm) for g in germs):
        return env, False
    rationals = {k: _to_rational(g) for k, g in env.items()}
    if all(v is not None for v in rationals.values()):
        return rationals, True
    periodics = {k: _to_periodic(g) for k, g in env.items()}
    if all(v is not None for v in periodics.values()):
        return periodics, False
    raise MixedClasses("assignment mixes sequence classes")


def los_check_qf(formula, assignment: dict) -> AeVerdict:
    """Three-valued a.e. truth of a quantifier-free formula under the assignment.

    For rational-function germs every atom settles to a finite or cofinite
    truth set, so the verdict is two-valued.  For eventually periodic germs
    the formula is decided per residue class of the common period; a mixed
    outcome is ultrafilter dependent.
    """
    node = parse_qf(formula) if isinstance(formula, str) else formula
    names = set()
    _formula_vars(node, names)
    missing = names - set(assignment)
    if missing:
        raise GermError(f"unbound variables: {sorted(missing)}")
    env, rational = _align_environment({k: assignment[k] for k in names})
    if rational:
        truth = _formula_eventual_truth(node, env)
        return AeVerdict.TRUE_AE if truth else AeVerdict.FALSE_AE
    pre = max((len(g.preperiod) for g in env.values()), default=0)
    length = 1
    for g in env.values():
        lg = len(g.period)
        length = length * lg // math.gcd(length, lg)
    flags = [_formula_truth_at(node, env, pre + j + 1) for j in range(length)]
    return _verdict_from_flags(flags)


def stabilization_bound(formula, assignment: dict) -> int:
    """Index beyond which pointwise truth matches the a.e. verdict.

    Only meaningful for rational-function assignments: past every root of
    every atom's cross-multiplied difference, atom truth values are constant.
    """
    node = parse_qf(formula) if isinstance(formula, str) else formula
    names = set()
    _formula_vars(node, names)
    env, rational = _align_environment({k: assignment[k] for k in names})
    if not rational:
        pre = max((len(g.preperiod) for g in env.values()), default=0)
        return pre
    bound = 1

    def visit(n):
        nonlocal bound
        if isinstance(n, _QfAtom):
            diff = sub(_eval_term_germ(n.rhs, env), _eval_term_germ(n.lhs, env))
            if isinstance(diff, PeriodicGerm):
                diff = _to_rational(diff)
            if not diff.num.is_zero():
                bound = max(bound, _cauchy_bound(diff.num))
            bound = max(bound, _cauchy_bound(diff.den))
        elif isinstance(n, _QfNot):
            visit(n.body)
        else:
            visit(n.lhs)
            visit(n.rhs)

    visit(node)
    return bound


def check_pointwise(formula, assignment: dict, n: int) -> bool:
    """Plain truth of the formula at one index (cross-check helper)."""
    node = parse_qf(formula) if isinstance(formula, str) else formula
    names = set()
    _formula_vars(node, names)
    env, _ = _align_environment({k: assignment[k] for k in names})
    return _formula_truth_at(node, env, n)


# -- textual forms ---------------------------------------------------------------


def parse_germ(text: str) -> Germ:
    """Parse ``rf(<rational function of n>)``, ``ep([pre];[period])`` or a rational."""
    text = text.strip()
    if text.startswith("rf(") and text.endswith(")"):
        return _parse_rf(text[3:-1])
    if text.startswith("ep(") and text.endswith(")"):
        return _parse_ep(text[3:-1])
    try:
        return embed_constant(Fraction(text))
    except ValueError:
        raise GermSyntaxError(f"not a germ: {text!r}") from None


def _parse_rf(body: str) -> RationalGerm:
    tokens = _tokenize_qf(body)
    parser = _QfParser(tokens)
    node = parser.term()
    if parser.peek() is not None:
        raise GermSyntaxError(f"trailing tokens in rf(): {parser.peek()!r}")
    env = {"n": RationalGerm(Poly.X)}
    names = set()
    _term_vars(node, names)
    if not names <= {"n"}:
        raise GermSyntaxError(f"unknown symbols in rf(): {sorted(names - {'n'})}")

    def build(nd) -> RationalGerm:
        kind = nd[0]
        if kind == "const":
            return RationalGerm(Poly.const(nd[1]))
        if kind == "var":
            return env["n"]
        if kind == "neg":
            return neg(build(nd[1]))
        a, b = build(nd[1]), build(nd[2])
        if kind == "add":
            return add(a, b)
        if kind == "sub":
            return sub(a, b)
        if kind == "div":
            return div(a, b)
        return mul(a, b)

    return build(node)


def _parse_ep(body: str) -> PeriodicGerm:
    parts = body.split(";")
    if len(parts) != 2:
        raise GermSyntaxError("ep() needs the form ep([pre];[period])")

    def parse_list(chunk: str):
        chunk = chunk.strip()
        if not (chunk.startswith("[") and chunk.endswith("]")):
            raise GermSyntaxError(f"expected a bracketed list, got {chunk!r}")
        inner = chunk[1:-1].strip()
        if not inner:
            return []
        try:
            return [Fraction(piece.strip()) for piece in inner.split(",")]
        except ValueError as exc:
            raise GermSyntaxError(f"bad rational in list: {exc}") from None

    pre, per = parse_list(parts[0]), parse_list(parts[1])
    if not per:
        raise GermSyntaxError("period list must be nonempty")
    return PeriodicGerm(pre, per)
