"""Diophantine formulas: syntax, semantics, bounded search and compilation."""

from diophantine.formula.ast import (
    Add,
    And,
    Const,
    Dvd,
    Eq,
    Exists,
    Formula,
    Le,
    Lt,
    ModCong,
    Mul,
    Named,
    Ne,
    Or,
    ScopeError,
    Term,
    Var,
    binder_paths,
    binders,
    check_scope,
    close,
    cong,
    conj,
    disj,
    dvd,
    eq,
    exists,
    exists_many,
    instantiate,
    le,
    lt,
    ne,
    param_count,
    show,
)
from diophantine.formula.compiler import (
    CompiledDioph,
    ScanTooLarge,
    compile_formula,
    membership,
    term_poly,
)
from diophantine.formula.search import SearchLimitExceeded, eval_bounded, search
from diophantine.formula.semantics import atom_holds, eval_bounded_naive, four_squares, holds_with
from diophantine.formula.sexpr import ParseError, parse_formula, to_sexpr

compile = compile_formula
