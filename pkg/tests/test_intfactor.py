import json
import threading

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcarev import intfactor
from lcarev.errors import FactorTimeout
from lcarev.intfactor import (
    FactorCache,
    euler_phi,
    factor_int,
    is_prime,
    multiplicative_order,
    trial_division,
)

from . import naive


def test_is_prime_examples():
    assert is_prime(7)
    assert not is_prime(1)
    assert not is_prime(0)
    assert is_prime(2147483647)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    assert is_prime((1 << 89) - 1)
    assert not is_prime(((1 << 61) - 1) * ((1 << 31) - 1))


def test_is_prime_matches_sieve():
    limit = 20000
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(limit**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    assert [n for n in range(limit + 1) if is_prime(n)] == [n for n in range(limit + 1) if sieve[n]]


def test_factor_examples():
    assert factor_int(15).factors == ((3, 1), (5, 1))
    assert factor_int(84).factors == ((2, 2), (3, 1), (7, 1))
    assert factor_int((1 << 25) - 1).factors == ((31, 1), (601, 1), (1801, 1))
    assert factor_int(1).factors == ()
    assert str(factor_int(84)) == "2^2*3*7"
    with pytest.raises(ValueError):
        factor_int(0)


def test_factor_beyond_trial_division_without_cache():
    n = 1000003 * 998244353 * 2**5
    fi = factor_int(n, use_cache=False)
    assert fi.factors == ((2, 5), (1000003, 1), (998244353, 1))


def test_mersenne_numbers_reconstruct_from_bundled_cache():
    cache = FactorCache()
    for n in range(1, 129):
        fi = factor_int((1 << n) - 1, cache=cache)
        assert fi.product() == (1 << n) - 1
        assert all(is_prime(p) for p in fi.primes())


def test_mersenne_split_without_cache():
    for n in (30, 44, 60, 64):
        fi = factor_int((1 << n) - 1, use_cache=False)
        assert fi.product() == (1 << n) - 1 and all(is_prime(p) for p in fi.primes())


def test_timeout_carries_partial():
    hard = ((1 << 61) - 1) * ((1 << 89) - 1) * 12
    with pytest.raises(FactorTimeout) as info:
        factor_int(hard, budget=0.0, use_cache=False)
    assert isinstance(info.value.partial, dict)


@given(st.integers(min_value=1, max_value=10**12))
def test_reconstruction(n):
    fi = factor_int(n, use_cache=False)
    assert fi.product() == n
    assert all(is_prime(p) for p in fi.primes())
    assert list(fi.primes()) == sorted(set(fi.primes()))


def _spf_sieve(limit: int) -> list[int]:
    spf = list(range(limit + 1))
    for p in range(2, int(limit**0.5) + 1):
        if spf[p] == p:
            for k in range(p * p, limit + 1, p):
                if spf[k] == k:
                    spf[k] = p
    return spf


def test_agrees_with_sieve_for_every_n_up_to_a_million():
    limit = 10**6
    spf = _spf_sieve(limit)
    for n in range(2, limit + 1):
        want: dict[int, int] = {}
        m = n
        while m > 1:
            want[spf[m]] = want.get(spf[m], 0) + 1
            m //= spf[m]
        assert dict(factor_int(n, use_cache=False).factors) == want, n


def test_agrees_with_trial_division_sample():
    for n in range(1, 10**6 + 1, 997):
        assert dict(factor_int(n, use_cache=False).factors) == naive.factor_int(n), n


def test_trial_division_keeps_value():
    assert trial_division(360).value == 360
    assert trial_division(360).factors == ((2, 3), (3, 2), (5, 1))


def test_phi_and_order():
    assert euler_phi(1) == 1 and euler_phi(9) == 6 and euler_phi(84) == 24
    assert multiplicative_order(2, 7) == 3
    assert multiplicative_order(2, 9) == 6
    assert multiplicative_order(2, 1) == 1
    with pytest.raises(ValueError):
        multiplicative_order(2, 6)


def test_cache_file_round_trip(tmp_path):
    path = tmp_path / "fc.json"
    cache = FactorCache(path)
    n = 1000003 * 1000033
    fi = factor_int(n, cache=cache)
    raw = json.loads(path.read_text())
    assert raw[str(n)] == [["1000003", 1], ["1000033", 1]]
    again = FactorCache(path)
    assert again.get(n) == fi.factors


def test_cache_concurrent_puts(tmp_path):
    cache = FactorCache(tmp_path / "fc.json")
    nums = [1000003 * p for p in (1000033, 1000037, 1000039, 1000081)]

    def work(n):
        factor_int(n, cache=cache)

    threads = [threading.Thread(target=work, args=(n,)) for n in nums * 3]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    raw = json.loads((tmp_path / "fc.json").read_text())
    assert sorted(map(int, raw)) == sorted(nums)


def test_env_selects_cache(tmp_path, monkeypatch):
    path = tmp_path / "env.json"
    monkeypatch.setenv(intfactor.CACHE_ENV, str(path))
    monkeypatch.setattr(intfactor, "_default_cache", None)
    factor_int(1000003 * 1000033)
    assert path.exists()
