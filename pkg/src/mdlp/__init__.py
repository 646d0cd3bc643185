"""Multiple-discrete-logarithm instances over Z_N: construction,
validation, solving and attacking, with an index-calculus side channel for
single discrete logs over prime fields.
"""

from .arith import (
    Factorization,
    Modulus,
    carmichael,
    euler_phi,
    factorize,
    gcd_lcm,
    is_probable_prime,
    mod_inv,
    mod_pow,
    multiplicative_order,
    primes_up_to,
)
from .congruence import (
    Congruence,
    CongruenceSystem,
    CrtSolution,
    solvable_pair,
    solve_system,
    split_exponent,
)
from .errors import (
    AllMethodsExhausted,
    BudgetExceeded,
    CapacityExceeded,
    GenerationFailed,
    IndependenceViolation,
    InvalidModulus,
    MdlpError,
    NotAUnit,
    NotInvertible,
    RankDeficient,
    UnsolvableSystem,
)
from .indexcalc import (
    FactorBase,
    Relation,
    RelationMatrix,
    build_factor_base,
    collect_relations,
    dlp_via_index_calculus,
    relation_rank_demo,
    solve_base_logs,
    try_smooth,
)
from .instance import (
    HardnessReport,
    Instance,
    check_collapse_resistance,
    check_peel_resistance,
    from_json_dict,
    generate,
    hardness_report,
    make_instance,
    to_json_dict,
    truth_table,
    verify,
)
from .solvers import (
    DlpTask,
    PeelResult,
    Solution,
    attack_collapse,
    attack_peel,
    find_all_solutions,
    solve,
    solve_dlp,
    solve_exhaustive,
    solve_mitm,
)
from .subgroup import SubgroupClosure, close, contains, independence_check

__version__ = "0.1.0"

__all__ = [
    "AllMethodsExhausted",
    "BudgetExceeded",
    "CapacityExceeded",
    "Congruence",
    "CongruenceSystem",
    "CrtSolution",
    "DlpTask",
    "FactorBase",
    "Factorization",
    "GenerationFailed",
    "HardnessReport",
    "IndependenceViolation",
    "Instance",
    "InvalidModulus",
    "MdlpError",
    "Modulus",
    "NotAUnit",
    "NotInvertible",
    "PeelResult",
    "RankDeficient",
    "Relation",
    "RelationMatrix",
    "Solution",
    "SubgroupClosure",
    "UnsolvableSystem",
    "attack_collapse",
    "attack_peel",
    "build_factor_base",
    "carmichael",
    "check_collapse_resistance",
    "check_peel_resistance",
    "close",
    "collect_relations",
    "contains",
    "dlp_via_index_calculus",
    "euler_phi",
    "factorize",
    "find_all_solutions",
    "from_json_dict",
    "gcd_lcm",
    "generate",
    "hardness_report",
    "independence_check",
    "is_probable_prime",
    "make_instance",
    "mod_inv",
    "mod_pow",
    "multiplicative_order",
    "primes_up_to",
    "relation_rank_demo",
    "solvable_pair",
    "solve",
    "solve_base_logs",
    "solve_dlp",
    "solve_exhaustive",
    "solve_mitm",
    "solve_system",
    "split_exponent",
    "to_json_dict",
    "truth_table",
    "try_smooth",
    "verify",
]
