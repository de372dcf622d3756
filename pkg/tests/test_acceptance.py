"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import time

import numpy as np
import pytest

from conftest import REFERENCE_V4, reference_values
from g2census import chern, cli, census, deformation as dfm, identities
from g2census.census import Rep, RepresentationCensus
from g2census.groups import target
from g2census.presentation import abelianization, builtin, hom_count_mod2


def report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


def _klein(group, values):
    image = group.subgroup_closure(values)
    return len(image) == 4 and all(group.mult[x, x] == group.identity for x in image)


def test_criterion_1_joyce_census(capsys, joyce_s4, joyce_v4):
    est = joyce_s4.est
    g, p = est.group_, est.presentation_
    t6, t7 = p.index("t6"), p.index("t7")
    irr = est.irreducible_classes()
    off = [c for c in irr if not (_klein(g, c.values) and c.values[t6] == g.identity and c.values[t7] == g.identity)]
    by_sig = {}
    for c in irr:
        by_sig.setdefault(c.bundle.key(), []).append(c)
    single = [k for k, v in by_sig.items() if len(v) == 1]
    wrong_total = [k for k in single if est.totals_.get(k) != 64]
    table = {}
    for row, names in REFERENCE_V4.items():
        key = census.bundle_signature(Rep(g, reference_values(g, names)), p).key()
        table[row] = est.totals_.get(key)
    table_ok = all(v == 64 for v in table.values())
    fast = joyce_s4.seconds < 600 and joyce_v4.seconds < 30
    ok = not off and not wrong_total and table_ok and fast
    report(capsys, 1, ok,
           f"{len(irr)} irreducible classes, {len(off)} not V4-imaged with t6=t7=1; "
           f"{len(single)} single-class signatures, {len(wrong_total)} without total 64; "
           f"reference V4 totals {table}; S4 {joyce_s4.seconds:.1f}s, V4 {joyce_v4.seconds:.1f}s")
    assert len(off) == 0, f"{len(off)} irreducible classes outside V4 or with nontrivial t6/t7"
    assert len(wrong_total) == 0, f"{len(wrong_total)} single-class signatures without total 64"
    assert table_ok and fast


def test_criterion_2_t3_census(capsys, t3_q8):
    est = t3_q8.est
    g = est.group_
    i, j = g.names.index("i"), g.names.index("j")
    irr = est.irreducible_classes()
    expected = [(i, j, g.identity), (i, j, g.minus_one)]
    matched = sorted(k for c in irr for k, e in enumerate(expected) if census.conjugate_in_ambient(g, c.values, e))
    ok = len(est.classes_) == 2 and matched == [0, 1] and est.score() == 2 and t3_q8.seconds < 5
    report(capsys, 2, ok, f"{len(est.classes_)} classes, total {est.score()}, {t3_q8.seconds:.2f}s")
    assert ok


def test_criterion_3_abelianization(capsys):
    p = builtin("joyce-ex3")
    inv = abelianization(p)
    count = hom_count_mod2(p)
    ok = inv.factors == (2,) * 8 and inv.free_rank == 0 and count == 256
    report(capsys, 3, ok, f"abelianization {inv}, |Hom(G, Z/2)| = {count}")
    assert ok


def test_criterion_4_nondegeneracy(capsys, joyce_s4):
    irr = joyce_s4.est.irreducible_classes()
    nonzero = [c for c in irr if c.h1 != 0 or c.walpuski != 0]
    disagree = [c for c in irr if (c.h1 == 0) != (c.walpuski == 0)]
    same_dim = sum(1 for c in irr if c.h1 == c.walpuski)
    report(capsys, 4, not nonzero and not disagree,
           f"{len(irr)} irreducible classes: {len(nonzero)} with h1 or fixed-vector dimension > 0, "
           f"{len(disagree)} where the criteria disagree, {same_dim} with equal dimensions")
    assert len(disagree) == 0, f"{len(disagree)} classes where the criteria disagree"
    assert len(nonzero) == 0, f"{len(nonzero)} irreducible classes with H^1 != 0"


def test_criterion_5_identity_suite(capsys):
    t0 = time.perf_counter()
    res = identities.run_suite(seed=0, trials=1000)
    seconds = time.perf_counter() - t0
    failed = {k: v["failures"] for k, v in res["checks"].items() if v["failures"]}
    sampled = [k for k, v in res["checks"].items() if v["trials"] == 1000]
    ok = res["passed"] and seconds < 120 and len(sampled) == len(identities.CHECKS)
    report(capsys, 5, ok, f"{len(res['checks'])} checks x 1000 trials, failures {failed or 'none'}, {seconds:.1f}s")
    assert ok


def test_criterion_6_chern_algebra(capsys):
    t0 = time.perf_counter()
    checks = {r: chern.verify(r) for r in (chern.FORMAL, 2, 3, 4)}
    closed = chern.ch_adjoint() == chern.ch_adjoint_closed_form()
    oracle = all(chern.splitting_oracle(r) == chern.ch_adjoint(r).kill_chern_above(r) for r in (2, 3, 4))
    par = chern.parity_combination()
    c2p1 = par.coefficient_at("c2", "p1")
    c3c1 = par.coefficient_at("c3", "c1")
    even = chern.all_even_integers(chern.parity_remainder())
    seconds = time.perf_counter() - t0
    ok = (closed and oracle and c2p1 == -0.5 and c3c1 == -3 and even and seconds < 5
          and all(all(v.values()) for v in checks.values()))
    report(capsys, 6, ok, f"closed form {closed}, oracle r=2..4 {oracle}, c2p1 {c2p1}, c3c1 {c3c1}, "
                          f"remainder even {even}, {seconds:.2f}s")
    assert ok


def _class_keys(name, group, prune):
    est = RepresentationCensus(target=group, prune=prune).fit(builtin(name))
    return [c.values for c in est.classes_]


def test_criterion_7_structural_checks(capsys):
    prune_eq = {}
    for name, group in (("joyce-ex3", "V4"), ("t3-k3", "Q8")):
        prune_eq[group] = _class_keys(name, group, True) == _class_keys(name, group, False)
    structural = {}
    for name, group in (("joyce-ex3", "V4"), ("joyce-ex3-affine", "S4"), ("t3-k3", "Q8")):
        p, g = builtin(name), target(group)
        rows = census.enumerate_array(p, g).astype(np.int64)
        fox = dfm.batch_fox_identity(p, g, rows)
        cob = dfm.batch_coboundary_check(p, g, rows)
        structural[name] = (len(rows), int((~fox).sum()), int((~cob).sum()))
    ok = all(prune_eq.values()) and all(f == 0 and c == 0 for _, f, c in structural.values())
    report(capsys, 7, ok, f"pruned == unpruned {prune_eq}; (reps, fox failures, coboundary failures) {structural}")
    assert ok


def _census_bytes(tmp_path, name, group, jobs):
    path = tmp_path / f"{name}-{group}-{jobs}.json"
    code = cli.main(["census", "--builtin", name, "--target", group, "--jobs", str(jobs),
                     "--no-timing", "--report", str(path)])
    assert code == 0
    return path.read_bytes()


def test_criterion_8_jobs_determinism(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("G2CENSUS_CACHE", raising=False)
    runs = {("joyce-ex3", "S4"): (1, 3), ("joyce-ex3", "V4"): (1, 2, 4), ("t3-k3", "Q8"): (1, 2)}
    same = {}
    for (name, group), jobs in runs.items():
        outs = [_census_bytes(tmp_path, name, group, j) for j in jobs]
        same[f"{name}/{group}"] = all(o == outs[0] for o in outs)
    capsys.readouterr()
    ok = all(same.values())
    report(capsys, 8, ok, f"byte-identical across --jobs: {same}")
    assert ok
