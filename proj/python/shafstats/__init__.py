"""Reduction statistics of an elliptic curve y^2 = x^3 + a x + b over Q.

Thin wrapper over the C++ core. Typical use::

    import shafstats as sf
    table = sf.trace_table(sf.Curve(1, 1), 10**5)
    sha = sf.build_sha_table(table)
    sf.pi_ts(sha, 10**5)
"""

from ._shafstats import (
    ApTable,
    Curve,
    FrobeniusIndex,
    ShafstatsError,
    ShaRecord,
    ShaTable,
    SieveConfig,
    SumReport,
    ap_bsgs,
    ap_naive,
    build_index,
    build_sha_table,
    burgess_sum,
    d_xy,
    extend,
    factorize,
    frobenius_m,
    hb_double_sum,
    is_cm,
    is_prime,
    is_squarefree,
    j_invariant,
    jacobi,
    lang_trotter_fit,
    lemma1_report,
    load,
    m_set,
    make_sieve_config,
    pi_K,
    pi_n,
    pi_ts,
    primes_up_to,
    run_cli,
    s_m,
    save,
    sha_histogram,
    sha_size,
    sigma,
    square_sieve_rhs,
    squarefree_decompose,
    trace_table,
    u_sum,
)

__version__ = "0.1.0"


def main(argv=None):
    """Console entry point equivalent to the shafstats executable."""
    import sys

    args = ["shafstats"] + list(sys.argv[1:] if argv is None else argv)
    code, out, err = run_cli(args)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
