"""Lattice nodes, cubature, direct verifiers, and polynomial round trips."""

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cbclat.freqset import FrequencySet, difference_set, gen_cube
from cbclat.lattice import (
    INT64_SAFE_M,
    Rank1Lattice,
    TrigPolynomial,
    cubature,
    eval_on_lattice,
    eval_poly,
    nodes,
    reconstruct_coeffs,
    verify_integration,
    verify_reconstruction,
)
from cbclat.primes import nextprime
from cbclat.search import CbcConfig, cbc_construct


def test_lattice_validation():
    Rank1Lattice(1, (0, 0))
    with pytest.raises(ValueError):
        Rank1Lattice(0, (0,))
    with pytest.raises(ValueError):
        Rank1Lattice(5, (5,))
    with pytest.raises(ValueError):
        Rank1Lattice(5, (-1,))
    with pytest.raises(ValueError):
        Rank1Lattice(5, ())


def test_lattice_json_round_trip():
    lat = Rank1Lattice(7, (1, 3, 5))
    assert lat.as_dict() == {"d": 3, "M": 7, "z": [1, 3, 5]}
    assert Rank1Lattice.from_dict(lat.as_dict()) == lat
    with pytest.raises(ValueError):
        Rank1Lattice.from_dict({"d": 2, "M": 7, "z": [1, 3, 5]})


def test_nodes_examples():
    assert nodes(Rank1Lattice(1, (0, 0))).tolist() == [[0.0, 0.0]]
    got = nodes(Rank1Lattice(4, (1, 3)))
    assert got.tolist() == [[0.0, 0.0], [0.25, 0.75], [0.5, 0.5], [0.75, 0.25]]
    assert nodes(Rank1Lattice(2, (1, 1))).tolist() == [[0.0, 0.0], [0.5, 0.5]]
    assert np.all(nodes(Rank1Lattice(13, (1, 5))) >= 0)
    assert np.all(nodes(Rank1Lattice(13, (1, 5))) < 1)


def test_cubature_constant_and_length_check():
    lat = Rank1Lattice(5, (1, 2))
    assert cubature(lat, [3 + 1j] * 5) == 3 + 1j
    with pytest.raises(ValueError):
        cubature(lat, [1.0] * 4)


def test_cubature_of_single_exponentials():
    # mean of e^(2 pi i k.x_j) is 1 when k.z is 0 mod M, else 0
    rng = random.Random(41)
    for _ in range(50):
        M = rng.randrange(2, 65)
        d = rng.randrange(1, 4)
        z = tuple(rng.randrange(M) for _ in range(d))
        k = tuple(rng.randrange(-8, 9) for _ in range(d))
        lat = Rank1Lattice(M, z)
        samples = [np.exp(2j * np.pi * np.dot(k, x)) for x in nodes(lat)]
        q = cubature(lat, samples)
        expected = 1.0 if sum(a * b for a, b in zip(k, z)) % M == 0 else 0.0
        assert abs(q - expected) < 1e-12


def test_verify_integration_examples():
    assert verify_integration(Rank1Lattice(2, (1, 1)), FrequencySet([(0, 0)]))
    assert not verify_integration(Rank1Lattice(2, (1, 1)), FrequencySet([(1, 1)]))
    assert verify_integration(Rank1Lattice(3, (1, 1)), FrequencySet([(1, 1)]))


def test_verify_reconstruction_examples():
    square = FrequencySet([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert verify_reconstruction(Rank1Lattice(4, (1, 2)), square)
    assert not verify_reconstruction(Rank1Lattice(3, (1, 2)), square)
    assert verify_reconstruction(Rank1Lattice(2, (1, 1)), FrequencySet([(7, -3)]))


def test_verifiers_reject_dimension_mismatch():
    with pytest.raises(ValueError):
        verify_integration(Rank1Lattice(5, (1,)), FrequencySet([(1, 2)]))
    with pytest.raises(ValueError):
        verify_reconstruction(Rank1Lattice(5, (1, 2, 3)), FrequencySet([(1, 2)]))


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_reconstruction_equals_integration_on_differences(data):
    d = data.draw(st.integers(1, 3))
    rows = data.draw(st.lists(st.tuples(*[st.integers(-5, 5)] * d), min_size=1, max_size=12))
    M = data.draw(st.sampled_from([2, 3, 5, 7, 11, 13, 17, 19, 23]))
    z = tuple(data.draw(st.integers(0, M - 1)) for _ in range(d))
    I = FrequencySet(rows)
    lat = Rank1Lattice(M, z)
    assert verify_reconstruction(lat, I) == verify_integration(lat, difference_set(I))


def test_verifier_residues_exact_above_int32():
    # M beyond the int64 fast-path limit exercises the widened path; the
    # expected residue is computed with plain Python integers.
    M = nextprime(INT64_SAFE_M)
    k = (2**31 - 1, -(2**31 - 1))
    z = (M - 1, M - 7)
    r = ((2**31 - 1) * (M - 1) - (2**31 - 1) * (M - 7)) % M
    I = FrequencySet([k])
    lat = Rank1Lattice(M, z)
    assert verify_integration(lat, I) == (r != 0)
    # and the same delta on the fast path just below the limit
    M2 = 3037000493  # prime below the int64-safe bound
    z2 = (M2 - 1, M2 - 7)
    r2 = ((2**31 - 1) * (M2 - 1) - (2**31 - 1) * (M2 - 7)) % M2
    assert verify_integration(Rank1Lattice(M2, z2), I) == (r2 != 0)


def test_eval_poly_examples():
    one = TrigPolynomial(FrequencySet([(0, 0)]), [1.0])
    assert abs(eval_poly(one, (0.3, 0.9)) - 1.0) < 1e-15
    mono = TrigPolynomial(FrequencySet([(1, 0)]), [1.0])
    assert abs(eval_poly(mono, (0.5, 0.3)) - (-1.0)) < 1e-12
    rng = random.Random(2)
    I = gen_cube(2, 2)
    coeffs = np.array([complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(len(I))])
    p = TrigPolynomial(I, coeffs)
    assert abs(eval_poly(p, (0.0, 0.0)) - coeffs.sum()) < 1e-12


def test_poly_validation_and_json():
    I = FrequencySet([(0, 1), (1, 0)])
    with pytest.raises(ValueError):
        TrigPolynomial(I, [1.0])
    p = TrigPolynomial(I, [1 + 2j, 3 - 4j])
    obj = p.as_dict()
    assert obj["support"] == [[0, 1], [1, 0]]
    assert obj["coeffs"] == [[1.0, 2.0], [3.0, -4.0]]
    q = TrigPolynomial.from_dict(obj)
    assert q.support == p.support
    assert np.array_equal(q.coeffs, p.coeffs)
    # coefficients follow their frequencies through re-sorting
    scrambled = {"support": [[1, 0], [0, 1]], "coeffs": [[3.0, -4.0], [1.0, 2.0]]}
    q2 = TrigPolynomial.from_dict(scrambled)
    assert np.array_equal(q2.coeffs, p.coeffs)


def test_eval_on_lattice_matches_pointwise():
    rng = random.Random(5)
    I = gen_cube(2, 2)
    coeffs = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(len(I))]
    p = TrigPolynomial(I, coeffs)
    lat = Rank1Lattice(31, (1, 12))
    fast = eval_on_lattice(p, lat)
    slow = np.array([eval_poly(p, x) for x in nodes(lat)])
    assert np.max(np.abs(fast - slow)) < 1e-11


def test_reconstruct_zero_and_single_monomial():
    square = FrequencySet([(0, 0), (1, 0), (0, 1), (1, 1)])
    lat = Rank1Lattice(5, (1, 2))
    assert verify_reconstruction(lat, square)
    zeros = reconstruct_coeffs(lat, square, np.zeros(5, dtype=complex))
    assert np.all(zeros == 0)
    for idx in range(4):
        coeffs = np.zeros(4, dtype=complex)
        coeffs[idx] = 1.0
        p = TrigPolynomial(square, coeffs)
        rec = reconstruct_coeffs(lat, square, eval_on_lattice(p, lat))
        assert np.max(np.abs(rec - coeffs)) < 1e-12


def test_reconstruct_round_trip_on_cube():
    I = gen_cube(2, 2)
    M = nextprime(2 * max(len(I) + 1, 2))
    assert M == 53
    result = cbc_construct(I, CbcConfig(M=M, T=M, mode="reconstruction", seed=11))
    assert result.success
    lat = Rank1Lattice(M, result.z)
    assert verify_reconstruction(lat, I)
    rng = random.Random(8)
    coeffs = np.array([complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(len(I))])
    p = TrigPolynomial(I, coeffs)
    rec = reconstruct_coeffs(lat, I, eval_on_lattice(p, lat))
    rel = np.max(np.abs(rec - coeffs)) / np.sum(np.abs(coeffs))
    assert rel <= 1e-10


def test_reconstruct_length_check():
    lat = Rank1Lattice(5, (1, 2))
    with pytest.raises(ValueError):
        reconstruct_coeffs(lat, FrequencySet([(0, 0)]), np.zeros(4, dtype=complex))
