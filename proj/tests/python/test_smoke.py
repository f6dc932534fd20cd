import math

import pytest

import shafstats as sf


def legendre(a, p):
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def brute_ap(a, b, p):
    squares = {}
    for y in range(p):
        squares[y * y % p] = squares.get(y * y % p, 0) + 1
    count = 1 + sum(squares.get((x ** 3 + a * x + b) % p, 0) for x in range(p))
    return p + 1 - count


def test_arith():
    assert sf.primes_up_to(10) == [2, 3, 5, 7]
    assert sf.is_prime(10**12 + 39)
    assert sf.factorize(48) == [(2, 4), (3, 1)]
    assert sf.squarefree_decompose(48) == (4, 3)
    assert sf.jacobi(2, 15) == 1
    for p in (3, 5, 7, 11, 97):
        for k in range(p):
            assert sf.jacobi(k, p) == legendre(k, p)


def test_curve():
    c = sf.Curve(1, 1)
    assert c.delta == -496
    assert c.bad_primes == [2, 3, 31]
    assert sf.j_invariant(c) == (6912, 31)
    assert not sf.is_cm(c)
    assert sf.is_cm(sf.Curve(1, 0))
    with pytest.raises(sf.ShafstatsError) as info:
        sf.Curve(0, 0)
    assert info.value.args[1] == "singular-curve"


def test_traces_match_brute_force():
    c = sf.Curve(1, 1)
    table = sf.trace_table(c, 300)
    for p, ap in table.records:
        assert ap == brute_ap(1, 1, p)
    assert sf.ap_bsgs(c, 10007) == sf.ap_naive(c, 10007)


def test_statistics_pipeline(tmp_path):
    c = sf.Curve(1, 1)
    table = sf.trace_table(c, 10**4, threads=2)
    path = str(tmp_path / "cache.csv")
    sf.save(table, path)
    assert sf.load(path, c) == table
    assert sf.extend(sf.trace_table(c, 1000), 10**4) == table

    sha = sf.build_sha_table(table)
    for r in sha.records:
        assert r.d == 4 * r.p - r.ap * r.ap
        assert math.isqrt(r.sha) ** 2 == r.sha
    ratio = sf.pi_ts(sha, 10**4) / 1229
    assert 0.3 <= ratio <= 0.95

    idx = sf.build_index(sha)
    members, largest = sf.m_set(idx, 10**4)
    assert sum(sf.pi_K(idx, m, 10**4) for m in members) == len(table)
    assert largest == max(members)
    assert sf.s_m(sha, 11, 10**4) == sf.pi_K(idx, 11, 10**4)


def test_charsums():
    assert sf.burgess_sum(10, 3, 15).value == 0
    assert sf.hb_double_sum(4, 3, {1: 1.0, 2: 1.0, 3: 1.0}).value == 9
    cfg = sf.make_sieve_config(math.e ** 2, 5.0, [2, 3, 31])
    assert cfg.ell_primes == [5, 7]
    assert cfg.z_floor_ok
    sha = sf.build_sha_table(sf.ApTable(sf.Curve(1, 1), 5, [(5, -3)]))
    rep = sf.square_sieve_rhs(sha, 1, 5, cfg)
    assert rep.exact == (4, 4)
    assert rep.value == 1.0


def test_run_cli():
    code, out, _ = sf.run_cli(["shafstats", "trace", "--a", "1", "--b", "1", "--x", "20"])
    assert code == 0
    assert out.splitlines()[1] == "1,1,-496,20,6,false"
    code, _, _ = sf.run_cli(["shafstats", "trace", "--a", "1", "--b", "1"])
    assert code == 2
