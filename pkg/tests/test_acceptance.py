"""Acceptance suite: eight end-to-end criteria, one verdict line each.

Every check here re-verifies the library's output independently: injections
are walked entry by entry, kernel vectors are multiplied out, enumeration
oracles are brute force, and stream statuses are replayed against batch
solves.  Run with ``-s`` to see the verdict lines as they happen.
"""

import itertools
import random
import time

import gen
from thincert import (Bijection, Dependence, FieldSpec, Sdr, SparseMatrix,
                      StreamState, UnsolvableAt, Vector, certify_columns,
                      diagonalize, kernel_basis, lemma_witness, max_matching,
                      mu_finite, mu_ordinal, rank, solve, support_graph,
                      DependentColumnsError)

QQ = FieldSpec.rationals()
GF2 = FieldSpec.gf(2)
GF3 = FieldSpec.gf(3)
GF5 = FieldSpec.gf(5)

FIELDS = [GF2, GF5, QQ]


def _verdict(num: int, name: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {num} ({name}): {'PASS' if ok else 'FAIL'}{detail}"
    print(line)
    assert ok, line


def _sdr_is_valid(matrix: SparseMatrix, cert: Sdr) -> bool:
    if sorted(cert.assignment) != list(range(matrix.num_cols)):
        return False
    rows = list(cert.assignment.values())
    if len(set(rows)) != len(rows):
        return False
    return all(bool(matrix.entry(i, j)) for j, i in cert.assignment.items())


def _kernel_is_valid(matrix: SparseMatrix, cert: Dependence) -> bool:
    target = matrix.transpose() if cert.side == "row" else matrix
    return (not cert.vector.is_zero) and target.mul_vector(cert.vector).is_zero


def test_criterion_1_sdr_on_trivial_kernels():
    rng = random.Random(20260821)
    per_field = 1000
    elapsed = 0.0
    ok = True
    for spec in FIELDS:
        for _ in range(per_field):
            m = gen.independent_cols_matrix(spec, rng)
            t0 = time.perf_counter()
            cert = certify_columns(m)
            elapsed += time.perf_counter() - t0
            if not (isinstance(cert, Sdr) and _sdr_is_valid(m, cert)):
                ok = False
                break
        if not ok:
            break
    ok = ok and elapsed < 30.0
    _verdict(1, "verified SDR for 3000 trivial-kernel matrices", ok,
             f", certification time {elapsed:.1f}s")


def test_criterion_2_kernel_vectors_on_deficient_matrices():
    rng = random.Random(2)
    ok = True
    for k in range(1000):
        spec = FIELDS[k % 3]
        m = gen.dependent_cols_matrix(spec, rng)
        plain = certify_columns(m)
        localized = certify_columns(m, via_violator=True)
        if not (isinstance(plain, Dependence) and _kernel_is_valid(m, plain)):
            ok = False
            break
        if not (isinstance(localized, Dependence) and _kernel_is_valid(m, localized)):
            ok = False
            break
    _verdict(2, "verified kernel vectors for 1000 deficient matrices", ok)


def test_criterion_3_diagonalization_of_invertible_matrices():
    rng = random.Random(3)
    ok = True
    distinct_coverings = 0
    for k in range(500):
        spec = GF5 if k % 2 else QQ
        m = gen.invertible_matrix(spec, rng)
        out = diagonalize(m)
        n = m.num_cols
        if not isinstance(out, Bijection):
            ok = False
            break
        if sorted(out.col_to_row) != list(range(n)) or \
                sorted(out.col_to_row.values()) != list(range(n)):
            ok = False
            break
        if not all(bool(m.entry(i, j)) for j, i in out.col_to_row.items()):
            ok = False
            break
        if any(out.row_to_col[i] != j for j, i in out.col_to_row.items()):
            ok = False
            break
        cols_sdr = certify_columns(m)
        rows_sdr = certify_columns(m.transpose())
        a = frozenset(cols_sdr.assignment.items())
        b = frozenset((j, i) for i, j in rows_sdr.assignment.items())
        if a != b:
            distinct_coverings += 1
    ok = ok and distinct_coverings >= 50
    _verdict(3, "500 invertible matrices diagonalized", ok,
             f", {distinct_coverings} with two distinct coverings")


def test_criterion_4_min_mu_matches_covering():
    rng = random.Random(4)
    graphs = [gen.random_graph(rng) for _ in range(200)]
    ok = True
    for g in graphs:
        covers_by_library = max_matching(g).covers_cols(g)
        covers_by_brute = gen.brute_max_matching_size(g) == len(g.left)
        nonneg = gen.min_mu_saturated(g) >= 0
        if not (covers_by_library == covers_by_brute == nonneg):
            ok = False
            break
    _verdict(4, "min mu over saturated strings vs column covering, 200 graphs", ok)


def test_criterion_5_witness_identity():
    rng = random.Random(5)
    ok = True
    witnesses = 0
    dependents = 0
    while witnesses < 500 and ok:
        spec = FIELDS[(witnesses + dependents) % 3]
        m = gen.dependent_cols_matrix(spec, rng, max_rows=10, max_cols=10) \
            if rng.random() < 0.5 else \
            gen.independent_cols_matrix(spec, rng, max_rows=10, max_cols=10)
        s = gen.random_saturated_string(m, rng)
        base = [i for i in s.row_range if rng.random() < 0.3]
        try:
            pair = lemma_witness(m, s, base)
        except DependentColumnsError as e:
            dependents += 1
            lam = e.kernel_vector
            if lam.is_zero or not m.mul_vector(lam).is_zero:
                ok = False
            continue
        witnesses += 1
        mu = mu_finite(support_graph(m), s)
        sub = m.submatrix(sorted(pair.rows), sorted(pair.cols))
        if mu != len(pair.rows) - rank(sub):
            ok = False
        if not set(base) <= pair.rows:
            ok = False
    _verdict(5, "witness identity exact on 500 extractions", ok,
             f", plus {dependents} dependent-column refutations")


def test_criterion_6_stream_prefixes_match_batch():
    rng = random.Random(6)
    ok = True
    for k in range(500):
        spec = FIELDS[k % 3]
        ncols, rows = gen.random_stream(spec, rng)
        st = StreamState(spec)
        oracle = gen.dense_prefix_statuses(spec, rows, ncols)
        prefix_entries: dict[tuple[int, int], object] = {}
        rhs_vals: list[object] = []
        for k_row, ((pairs, rhs), dense_ok) in enumerate(zip(rows, oracle), start=1):
            st.push(pairs, rhs)
            for c, v in pairs:
                prefix_entries[(k_row - 1, c)] = v
            rhs_vals.append(rhs)
            batch = solve(SparseMatrix.from_entries(spec, k_row, ncols, prefix_entries),
                          Vector.from_dense(spec, rhs_vals))
            batch_ok = isinstance(batch, Vector)
            if not (st.is_solvable == dense_ok == batch_ok):
                ok = False
                break
        if not ok:
            break
        if not st.is_solvable:
            status = st.status
            core = sorted(status.core)
            entries = {}
            core_rhs = []
            for pos, i in enumerate(core):
                for c, v in rows[i][0]:
                    entries[(pos, c)] = v
                core_rhs.append(rows[i][1])
            isolated = solve(SparseMatrix.from_entries(spec, len(core), ncols, entries),
                             Vector.from_dense(spec, core_rhs))
            if isinstance(isolated, Vector):
                ok = False
                break
    _verdict(6, "500 streams agree with batch solves at every prefix", ok)


def test_criterion_7_limit_values_match_simulation():
    rng = random.Random(7)
    cases = []
    for drift in (-1, 0, 1):
        cases += [(drift, gen.random_ordinal_string(rng, drift=drift))
                  for _ in range(10)]
    ok = len(cases) >= 20
    for _, s in cases:
        if mu_ordinal(s) != gen.simulate_mu(s):
            ok = False
            break
    _verdict(7, "limit values match prefix simulation on 30 generators", ok,
             ", drifts -1/0/+1 covered")


def test_criterion_8_exhaustive_small_matrices():
    ok = True
    checked = 0
    for r in range(5):
        for c in range(5):
            for combo in itertools.product(range(1 << c), repeat=r):
                masks = list(combo)
                m = gen.gf2_matrix_from_masks(masks, c)
                brute_rank, brute_kernel = gen.gf2_brute_rank_kernel(masks, c)
                basis = kernel_basis(m)
                if rank(m) != brute_rank or len(basis) != c - brute_rank:
                    ok = False
                    break
                for v in basis:
                    lam = sum(1 << j for j in v.support)
                    if lam not in brute_kernel:
                        ok = False
                        break
                checked += 1
            if not ok:
                break
        if not ok:
            break
    gf2_total = checked
    rng = random.Random(8)
    gf3_checked = 0
    while ok and gf3_checked < 300:
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        entries = {}
        for i in range(r):
            for j in range(c):
                v = rng.randrange(3)
                if v:
                    entries[(i, j)] = v
        m = SparseMatrix.from_entries(GF3, r, c, entries)
        brute_rank, brute_kernel = gen.brute_rank_kernel(GF3, m)
        basis = kernel_basis(m)
        if rank(m) != brute_rank or len(basis) != c - brute_rank:
            ok = False
            break
        for v in basis:
            if tuple(e.value for e in v.to_dense()) not in brute_kernel:
                ok = False
        gf3_checked += 1
    _verdict(8, "rank and kernel vs exhaustive enumeration", ok,
             f", {gf2_total} GF(2) matrices and {gf3_checked} GF(3) samples")
