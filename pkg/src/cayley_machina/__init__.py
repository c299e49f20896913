"""Cayley and dual Cayley automaton semigroups of finite semigroups."""

from .catalog import CatalogEntry, SweepReport, enumerate_semigroups, load, naive_enumerate, save, sweep
from .closure import (
    Budget,
    Certificate,
    ClosureReport,
    FreeCheckReport,
    certificate,
    closure,
    closure_generators,
    closure_isomorphic,
    free_check,
    verify_closed,
    verify_eq1,
)
from .errors import (
    BudgetExhausted,
    CayleyMachinaError,
    InternalDisagreement,
    NonAssociative,
    NotFinite,
    OutOfRange,
    ParseError,
    SemigroupError,
    StateBudgetExceeded,
    UnknownFamily,
)
from .green import (
    CriterionVerdict,
    GreenStructure,
    SchutzenbergerGroup,
    criteria,
    green,
    miller_clifford_holds,
    schutzenberger,
)
from .mealy import (
    MealyMachine,
    PointedTransducer,
    apply_prefix,
    canonicalize,
    cayley,
    compose,
    dual_cayley,
    equal,
    generator,
    identity,
    output_map,
    step,
)
from .semigroup import FiniteSemigroup, classify, direct_product, from_table, named

__version__ = "0.1.0"
