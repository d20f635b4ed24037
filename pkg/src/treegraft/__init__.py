"""Lexicalized tree-adjoining grammar engine for mixed-language judgments.

Build bilingual tree lexicons, decide whether language-tagged token
sequences are derivable, enumerate the strings a grammar predicts, and
compare rival analyses of adjective placement on a judgment corpus.
"""
from .corpus import (
    CorpusError,
    CorpusItem,
    Judgment,
    format_token_string,
    parse_corpus,
    parse_token_string,
)
from .evaluation import (
    AdjectiveOrder,
    EvaluationError,
    Report,
    VariantComparison,
    VariantKind,
    build_variant,
    compare_variants,
    load_language_orders,
    run_corpus,
)
from .grammar import (
    Grammar,
    GrammarError,
    GrammarReport,
    parse_grammar,
    serialize_grammar,
    serialize_tree,
    validate_grammar,
)
from .operations import (
    Derivation,
    DerivedTree,
    Operation,
    OperationError,
    Step,
    adjoin,
    instantiate,
    replay,
    substitute,
    yield_tokens,
)
from .oracle import MAX_ORACLE_TOKENS, OracleError, oracle_parse
from .parsing import (
    ParseConfig,
    ParseError,
    ParseMode,
    Verdict,
    auto_tree_bound,
    enumerate_strings,
    judge,
    parse,
    tree_budget,
    two_stage_parse,
)
from .trees import (
    Address,
    AddressError,
    ElementaryTree,
    NodeKind,
    Token,
    TreeNode,
    TreeType,
    Violation,
    anchor,
    foot,
    format_address,
    internal,
    node_at,
    parse_address,
    slot,
    validate_elementary,
    walk,
)

__version__ = "0.1.0"
