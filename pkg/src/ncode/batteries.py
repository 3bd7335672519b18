"""Randomized and exhaustive property batteries behind `ncode verify`.

Each battery returns CheckRow lists; rows state the claim checked so a
report is readable on its own.  All randomness is drawn from substreams of
the root seed, one per battery.
"""

from __future__ import annotations

from ncode import fixtures
from ncode.circulant import CirculantSpec, circulant_code, verify_range
from ncode.codes import Code, is_max_intersection_complete, maximal_codewords
from ncode.intervals import (
    Mode,
    Realization1D,
    atoms,
    check_maximal_atoms,
    closed_to_open,
    code_of,
    desingularize_closed,
    epsilon_distance,
    merge_pieces,
    normalize_closed_epsilon,
    normalize_open_epsilon,
    open_to_closed,
)
from ncode.maps import (
    MicStatus,
    apply_map,
    check_mic_preservation,
    is_iso_stage,
    maximal_correspondence,
    verify_monotone,
)
from ncode.randgen import (
    random_code,
    random_elementary_map,
    random_mic_code,
    random_realization,
    rng_for,
)
from ncode.report import CheckRow
from ncode.ring import (
    Endomorphism,
    all_neural_endomorphisms,
    apply_endo,
    enumerate_nrh,
    is_neural,
    multiply,
    one,
    RingElement,
)


def _row(claim: str, passed: bool, details: str = "") -> CheckRow:
    return CheckRow(claim, passed, details=details)


def _code_preserved(real: Realization1D, transformed: Realization1D) -> bool:
    return code_of(real).words == code_of(transformed).words


def _atom_partition_ok(real: Realization1D) -> bool:
    """Atoms are disjoint pieces whose union is the union of the sets."""
    table = atoms(real)
    all_pieces = [p for ps in table.entries.values() for p in ps]
    union = merge_pieces(all_pieces)
    covers = merge_pieces(
        [p for p, mask in __import__("ncode.intervals", fromlist=["pieces"]).pieces(real) if mask]
    )
    return union == covers


def battery_realization(seed: int, trials: int = 100, n_max: int = 5) -> list[CheckRow]:
    rows: list[CheckRow] = []

    fig_ok = code_of(fixtures.MIP_GAP_REALIZATION).words == tuple(
        sorted(fixtures.MIP_GAP_CODE.words)
    )
    ex_ok = code_of(fixtures.DOUBLET_REALIZATION).words == tuple(
        sorted(fixtures.DOUBLET_CODE.words)
    )
    rows.append(_row("reference realizations derive their published codes", fig_ok and ex_ok))

    for name, real in (
        ("five-neuron reference", fixtures.MIP_GAP_REALIZATION),
        ("six-neuron reference", fixtures.DOUBLET_REALIZATION),
    ):
        closed = open_to_closed(real)
        back = closed_to_open(closed)
        rows.append(
            _row(
                f"open/closed round trip preserves the code ({name})",
                _code_preserved(real, closed) and _code_preserved(real, back),
            )
        )

    rng = rng_for(seed, "realization")
    conv_ok = atom_ok = mopen_ok = eps_ok = True
    for _ in range(trials):
        n = rng.randint(1, n_max)
        uo = random_realization(rng, n, Mode.OPEN)
        uc = random_realization(rng, n, Mode.CLOSED)
        no = normalize_open_epsilon(uo)
        nc = normalize_closed_epsilon(uc)
        ds = desingularize_closed(uc)
        conv_ok &= _code_preserved(uo, no)
        conv_ok &= _code_preserved(uc, nc)
        conv_ok &= _code_preserved(uc, ds)
        conv_ok &= _code_preserved(uo, open_to_closed(uo))
        conv_ok &= _code_preserved(uc, closed_to_open(uc))
        eps_ok &= epsilon_distance(no) > 0
        eps_ok &= epsilon_distance(nc) > 0
        atom_ok &= _atom_partition_ok(uo) and _atom_partition_ok(uc)
        mopen_ok &= check_maximal_atoms(uo) and check_maximal_atoms(uc)
    rows.append(
        _row(
            f"all five transformations preserve the derived code ({trials} random realizations)",
            conv_ok,
        )
    )
    rows.append(_row("normalized realizations have positive epsilon", eps_ok))
    rows.append(_row("atoms partition the union of receptive sets", atom_ok))
    rows.append(_row("maximal-codeword atoms equal full intersections", mopen_ok))
    return rows


def battery_maps(seed: int, trials: int = 500) -> list[CheckRow]:
    rows: list[CheckRow] = []
    rng = rng_for(seed, "maps")

    monotone_ok = True
    for _ in range(trials):
        code = random_code(rng, rng.randint(1, 5))
        q = random_elementary_map(rng, code)
        monotone_ok &= verify_monotone(q, code)
    rows.append(
        _row(f"containment survives every elementary map ({trials} trials)", monotone_ok)
    )

    mic_ok = True
    for _ in range(trials):
        code = random_mic_code(rng, rng.randint(1, 5))
        q = random_elementary_map(rng, code)
        outcome = check_mic_preservation(q, code)
        mic_ok &= outcome.status is MicStatus.PRESERVED
    rows.append(
        _row(
            "surjective elementary maps preserve max-intersection completeness "
            f"({trials} complete sources)",
            mic_ok,
        )
    )

    coro_ok = True
    for _ in range(trials):
        code = random_code(rng, rng.randint(1, 5))
        q = random_elementary_map(rng, code, iso_only=True)
        image = apply_map(q, code)
        coro_ok &= is_max_intersection_complete(code) == is_max_intersection_complete(
            image
        )
    rows.append(
        _row(
            "invertible maps preserve completeness in both directions "
            f"({trials} trials)",
            coro_ok,
        )
    )

    maxcor_ok = True
    for _ in range(trials // 2):
        code = random_code(rng, rng.randint(1, 5))
        q = random_elementary_map(rng, code)
        maxcor_ok &= maximal_correspondence(q, code).holds
    rows.append(
        _row(
            "maximal codewords correspond across elementary maps "
            f"({trials // 2} trials)",
            maxcor_ok,
        )
    )
    return rows


def _reorder_code(code: Code, order: list[int]) -> Code:
    return Code(code.n, [code.words[i] for i in order])


def battery_ring(seed: int) -> list[CheckRow]:
    rows: list[CheckRow] = []
    rng = rng_for(seed, "ring")

    law_ok = True
    for _ in range(1000):
        code = random_code(rng, rng.randint(1, 5))
        m = code.m
        phi = Endomorphism(tuple(rng.randint(1, m) for _ in range(m)))
        y = RingElement(code, rng.randrange(1 << m))
        z = RingElement(code, rng.randrange(1 << m))
        law_ok &= apply_endo(phi, multiply(y, z)).coeffs == multiply(
            apply_endo(phi, y), apply_endo(phi, z)
        ).coeffs
        law_ok &= apply_endo(phi, one(code)).coeffs == one(code).coeffs
        law_ok &= sum(phi.preimage_sizes()) == m
    rows.append(
        _row("endomorphisms preserve products and unity; preimages cover the basis", law_ok)
    )

    um_ok = True
    for _ in range(200):
        code = random_code(rng, rng.randint(1, 5))
        target = rng.randint(1, code.m)
        um_ok &= is_neural(Endomorphism(tuple([target] * code.m)), code)
    rows.append(_row("every unity map is neural (200 random codes)", um_ok))

    monoid_ok = True
    for _ in range(20):
        code = random_code(rng, rng.randint(1, 4), max_words=4)
        endos = all_neural_endomorphisms(code)
        mappings = {e.mapping for e in endos}
        monoid_ok &= Endomorphism.identity(code.m).mapping in mappings
        from ncode.ring import compose

        for a in endos:
            for b in endos:
                monoid_ok &= compose(a, b).mapping in mappings
    rows.append(
        _row("neural endomorphisms form a monoid under composition (m<=4)", monoid_ok)
    )

    conj_ok = True
    for _ in range(50):
        code = random_code(rng, rng.randint(1, 4), max_words=4)
        q = random_elementary_map(rng, code, iso_only=True)
        image = apply_map(q, code)
        order = list(range(image.m))
        rng.shuffle(order)
        reordered = _reorder_code(image, order)
        # basis bijection: position k of the reordered code holds word order[k]
        alpha = Endomorphism(tuple(v + 1 for v in order))
        count_src = len(all_neural_endomorphisms(code))
        endos_img = all_neural_endomorphisms(reordered)
        conj_ok &= count_src == len(endos_img)
        for phi in endos_img[:8]:
            from ncode.ring import conjugate

            conj_ok &= is_neural(conjugate(phi, alpha), image)
    rows.append(
        _row(
            "invertible maps and basis reorders leave the census invariant "
            "(50 seeded pairs with conjugation spot checks)",
            conj_ok,
        )
    )

    prune_ok = True
    for n, p in ((5, 2), (5, 3), (7, 2), (7, 3), (8, 3)):
        code = circulant_code(CirculantSpec(n, p))
        plain = enumerate_nrh(code)
        pruned = enumerate_nrh(code, pruning=True)
        prune_ok &= (
            plain.nrh_total,
            plain.bpm_nrh,
            plain.um_nrh,
        ) == (pruned.nrh_total, pruned.bpm_nrh, pruned.um_nrh)
    rows.append(
        _row("norm-condition pruning never changes a circulant census", prune_ok)
    )
    return rows


def battery_circulant(
    n_min: int = 3,
    n_max: int = 6,
    include_frontier_cells: bool = False,
    workers: int = 1,
) -> tuple[list[CheckRow], "VerificationTable"]:
    from ncode.circulant import VerificationTable, verify

    table = verify_range(range(n_min, n_max + 1), workers=workers)
    rows = []
    for r in table.rows:
        claim = (
            f"circulant n={r.spec.n} p={r.spec.p}: {r.prediction.source}"
        )
        if r.frontier or r.total_match is None:
            details = f"brute {r.census.nrh_total}, predicted {r.prediction.value}"
            rows.append(CheckRow(claim, True, frontier=True, details=details))
        else:
            details = f"brute {r.census.nrh_total}, predicted {r.prediction.value}"
            rows.append(
                CheckRow(claim, r.passed, details=details)
            )
    extra_rows = []
    if include_frontier_cells:
        for spec, pruning in ((CirculantSpec(7, 4), False), (CirculantSpec(10, 5), True)):
            row = verify(spec, pruning=pruning, workers=workers, cap=10)
            extra_rows.append(row)
            rows.append(
                CheckRow(
                    f"frontier circulant n={spec.n} p={spec.p}: {row.prediction.source}",
                    True,
                    frontier=True,
                    details=(
                        f"brute {row.census.nrh_total}, conjectured {row.prediction.value}"
                    ),
                )
            )
    if extra_rows:
        table = VerificationTable(table.rows + tuple(extra_rows))
    return rows, table
