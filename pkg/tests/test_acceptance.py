"""Acceptance suite: the binding correctness contract for this package.

Each test covers one release criterion, pins its tolerance explicitly, and
prints a single PASS line with the measured evidence. Oracles here are
independent reimplementations (brute force or closed form), not calls back
into the code under test.
"""

import itertools
import json
import math
import os
import random
import subprocess
import sys
import time
from collections import defaultdict

import numpy as np
import pytest

from mopekit.amr import graphs_equal, parse_penman, serialize_penman
from mopekit.extraction import MotionAction, run_mope
from mopekit.fixtures import (
    load_caption_fixtures,
    pendulum_sequence,
    random_pose_sequence,
    three_four_five_sequence,
)
from mopekit.fixtures.oracles import oracle_dft, oracle_order_accuracy
from mopekit.kinematics import (
    KEYPOINT_COUNT,
    JointDef,
    PoseSequence,
    analyze,
    dft,
    joint_angle,
    point_speed,
    spectral_summary,
)
from mopekit.rewards import (
    action_f1,
    composite_reward,
    direction_accuracy,
    order_accuracy,
)
from mopekit.temporal import (
    KIND_AMR_TIME,
    KIND_EXPLICIT,
    KIND_IMPLICIT,
    ActionGraph,
    TemporalEdge,
    resolve_edges,
    sort_actions,
)

FIXTURES = load_caption_fixtures()


def act(concept, order=-1, direction=None, ident=0):
    return MotionAction(
        id=ident, amr_var=f"v{ident}", concept=concept, temporal_order=order, direction=direction
    )


def acts(*specs):
    return [act(c, order=o, direction=d, ident=i) for i, (c, o, d) in enumerate(specs)]


def test_accept_01_mope_rule_coverage_on_fixture_corpus():
    """All bundled caption fixtures reproduce their gold actions in < 1 s."""
    assert len(FIXTURES) >= 15

    start = time.perf_counter()
    results = []
    for fixture in FIXTURES:
        graphs, sentences = fixture.parse()
        results.append((fixture, run_mope(graphs, sentences)))
    elapsed = time.perf_counter() - start

    fields = ("concept", "subject", "object", "direction", "temporal_order")
    for fixture, actions in results:
        got = [{k: a.to_dict()[k] for k in fields} for a in actions]
        want = [{k: g[k] for k in fields} for g in fixture.gold_actions]
        assert got == want, fixture.name
    assert elapsed < 1.0, f"extraction took {elapsed:.3f}s"
    print(f"PASS mope-rule-coverage: {len(FIXTURES)} fixtures gold-equal in {elapsed * 1000:.1f} ms")


def test_accept_02_self_score_identity():
    """composite_reward(C, C) is exactly 1.0 in every component, mo_hall 0."""
    checked = 0
    for fixture in FIXTURES:
        graphs, sentences = fixture.parse()
        if not run_mope(graphs, sentences):
            continue
        b = composite_reward((graphs, sentences), (graphs, sentences))
        assert b.r_action == 1.0, fixture.name
        assert b.r_order == 1.0, fixture.name
        assert b.r_direction == 1.0, fixture.name
        assert b.composite == 1.0, fixture.name
        assert b.mo_hall == 0.0, fixture.name
        checked += 1
    assert checked >= 15
    print(f"PASS self-score-identity: {checked} fixtures score exactly 1.0 against themselves")


def test_accept_03_order_metric_matches_oracle():
    """order_accuracy equals the brute-force oracle on 1,000 random cases."""
    rng = random.Random(303)
    start = time.perf_counter()
    for case in range(1000):
        n = rng.randint(0, 6)
        # Distinct concepts so every generated action matches its reference
        # counterpart positionally; orders allow ties and unordered (-1) slots.
        def orders():
            return [rng.choice((-1, 0, 1, 2, 3, 4, 5, 6)) for _ in range(n)]

        gen_orders, ref_orders = orders(), orders()
        gen = [act(f"c{i}-01", gen_orders[i], ident=i) for i in range(n)]
        ref = [act(f"c{i}-01", ref_orders[i], ident=i) for i in range(n)]
        got = order_accuracy(gen, ref)
        want = oracle_order_accuracy(gen_orders, ref_orders)
        assert got == want, f"case {case}: {gen_orders} vs {ref_orders}: {got} != {want}"
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"{elapsed:.3f}s"
    print(f"PASS order-oracle-equivalence: 1000 random cases agree exactly in {elapsed:.2f} s")


def test_accept_04_known_value_reward_checks():
    """Hand-computed F1/order/direction values reproduce exactly."""
    half = action_f1(
        acts(("walk-01", 0, None), ("turn-01", 1, None)),
        acts(("walk-01", 0, None), ("jump-01", 1, None)),
    )
    assert half == 0.5

    two_thirds = action_f1(
        acts(("walk-01", 0, None), ("walk-01", 1, None)),
        acts(("walk-01", 0, None)),
    )
    assert two_thirds == 2 / 3

    order = order_accuracy(
        acts(("walk-01", 0, None), ("turn-01", 1, None), ("jump-01", 2, None)),
        acts(("walk-01", 0, None), ("jump-01", 1, None), ("turn-01", 2, None)),
    )
    assert order == 2 / 3

    direction = direction_accuracy(
        acts(("turn-01", 0, "right"), ("walk-01", 1, "forward")),
        acts(("turn-01", 0, "left"), ("walk-01", 1, "forward")),
    )
    assert direction == 0.5
    print("PASS known-value-rewards: F1=0.5, F1=2/3, order=2/3, direction=1/2 all exact")


def _independent_residue(n: int, edges: list[TemporalEdge]) -> set[int]:
    """Set-fixpoint cycle residue, sharing no code with the Kahn path."""
    remaining = set(range(n))
    live = [(e.source, e.target) for e in edges]
    while True:
        blocked = {t for s, t in live if s in remaining and t in remaining}
        removable = remaining - blocked
        if not removable:
            return remaining
        remaining -= removable


def _run_sort(n: int, edges: list[TemporalEdge]) -> tuple[dict[int, int], list[TemporalEdge]]:
    actions = [act("go-01", ident=i) for i in range(n)]
    resolved = resolve_edges(edges)
    ordered = sort_actions(actions, ActionGraph(nodes=list(range(n)), edges=resolved))
    return {a.id: a.temporal_order for a in ordered}, resolved


def test_accept_05_topological_sort_validity():
    """Resolved DAG edges always run earlier→later; cycles leave exactly the
    non-removable nodes at -1."""
    rng = random.Random(505)
    kinds = (KIND_EXPLICIT, KIND_AMR_TIME, KIND_IMPLICIT)
    start = time.perf_counter()

    for case in range(500):
        n = rng.randint(1, 50)
        density = rng.uniform(0.0, 0.2)
        perm = list(range(n))
        rng.shuffle(perm)
        edges = [
            TemporalEdge(perm[i], perm[j], rng.choice(kinds), "x")
            for i in range(n)
            for j in range(i + 1, n)
            if rng.random() < density
        ]
        orders, resolved = _run_sort(n, edges)
        assert all(o >= 0 for o in orders.values()), f"DAG case {case} produced -1"
        for e in resolved:
            assert orders[e.source] < orders[e.target], f"DAG case {case}: edge {e}"

    cyclic_done = 0
    while cyclic_done < 100:
        n = rng.randint(3, 50)
        cycle_len = rng.randint(3, min(6, n))
        members = rng.sample(range(n), cycle_len)
        edges = [
            TemporalEdge(members[i], members[(i + 1) % cycle_len], rng.choice(kinds), "x")
            for i in range(cycle_len)
        ]
        extra = rng.randint(0, n)
        for _ in range(extra):
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                edges.append(TemporalEdge(u, v, rng.choice(kinds), "x"))
        resolved_preview = resolve_edges(edges)
        expected = _independent_residue(n, resolved_preview)
        if not expected:
            continue  # extra edges displaced the planted cycle; not a cyclic case
        orders, resolved = _run_sort(n, edges)
        got = {i for i, o in orders.items() if o == -1}
        assert got == expected, f"cyclic case {cyclic_done}: {got} != {expected}"
        ranked = sorted(o for o in orders.values() if o != -1)
        assert ranked == list(range(len(ranked)))
        cyclic_done += 1

    elapsed = time.perf_counter() - start
    assert elapsed < 5.0, f"{elapsed:.3f}s"
    print(f"PASS toposort-validity: 500 DAGs ordered, 100 cyclic residues exact in {elapsed:.2f} s")


def _random_graph_text(rng: random.Random) -> str:
    concepts = ["walk-01", "run-02", "dog", "cat", "want-01", "go-02", "happy", "and"]
    roles = [":ARG0", ":ARG1", ":ARG2", ":mod", ":time", ":op1", ":op2", ":location"]
    counter = itertools.count()
    defined: list[str] = []

    def node(depth: int) -> str:
        var = f"x{next(counter)}"
        defined.append(var)
        parts = [f"({var} / {rng.choice(concepts)}"]
        for _ in range(rng.randint(0, 3) if depth < 4 else 0):
            role = rng.choice(roles)
            r = rng.random()
            if r < 0.2 and len(defined) > 1:
                parts.append(f" {role} {rng.choice(defined)}")
            elif r < 0.35:
                parts.append(f' {role} "lit {next(counter)}"' if rng.random() < 0.5 else f" {role} {rng.randint(0, 9)}")
            else:
                parts.append(f" {role} {node(depth + 1)}")
        parts.append(")")
        return "".join(parts)

    return node(1)


def test_accept_06_penman_round_trip():
    """parse→serialize→parse is structure-preserving on fixtures plus 200
    random graphs (depth ≤ 4, re-entrancy probability 0.2)."""
    graphs = [g for f in FIXTURES for g in f.parse()[0]]
    rng = random.Random(606)
    graphs += [parse_penman(_random_graph_text(rng)) for _ in range(200)]
    for i, graph in enumerate(graphs):
        again = parse_penman(serialize_penman(graph))
        assert graphs_equal(graph, again), f"graph {i} changed across round trip"
    print(f"PASS penman-round-trip: {len(graphs)} graphs structurally stable")


def _rotation_matrix(rng: random.Random) -> np.ndarray:
    a, b, c = (rng.uniform(0, 2 * math.pi) for _ in range(3))
    rz = np.array([[math.cos(a), -math.sin(a), 0], [math.sin(a), math.cos(a), 0], [0, 0, 1]])
    ry = np.array([[math.cos(b), 0, math.sin(b)], [0, 1, 0], [-math.sin(b), 0, math.cos(b)]])
    rx = np.array([[1, 0, 0], [0, math.cos(c), -math.sin(c)], [0, math.sin(c), math.cos(c)]])
    return rz @ ry @ rx


def _frame_values(result):
    for frame in result.frames:
        yield from (s for s in frame.point_speeds if s is not None)
        yield from (v for v in frame.joint_angles.values() if v is not None)


def test_accept_07_kinematic_invariants():
    """Rigid-motion invariance (1e-9), exact fps covariance, Parseval (1e-9
    relative), pendulum rate (1e-6), strict 0.6 angle boundary, exact 3-4-5."""
    rng = random.Random(707)
    seq = random_pose_sequence(rng, frames=8, fps=3.0)
    base = analyze(seq)

    shifted_kp = seq.keypoints.copy()
    shifted_kp[:, :, :3] += np.array([12.5, -3.25, 7.75])
    rotated_kp = seq.keypoints.copy()
    rotated_kp[:, :, :3] = rotated_kp[:, :, :3] @ _rotation_matrix(rng).T
    for variant_kp in (shifted_kp, rotated_kp):
        variant = analyze(PoseSequence(seq.fps, seq.person_id, variant_kp))
        for x, y in zip(_frame_values(base), _frame_values(variant)):
            assert abs(x - y) <= 1e-9

    double = analyze(PoseSequence(seq.fps * 2, seq.person_id, seq.keypoints))
    for t in range(seq.frame_count):
        for s1, s2 in zip(base.frames[t].point_speeds, double.frames[t].point_speeds):
            assert (s1 is None) == (s2 is None)
            if s1 is not None:
                assert s2 == 2.0 * s1  # exact: scaling by 2 is lossless in binary fp
        for name in base.frames[t].joint_angular_velocities:
            w1 = base.frames[t].joint_angular_velocities[name]
            w2 = double.frames[t].joint_angular_velocities[name]
            assert (w1 is None) == (w2 is None)
            if w1 is not None:
                assert w2 == 2.0 * w1
        v1, v2 = base.frames[t].v_cm, double.frames[t].v_cm
        assert (v1 is None) == (v2 is None)
        if v1 is not None:
            assert v2 == 2.0 * v1

    signal = [rng.uniform(-3, 3) for _ in range(32)]
    spectrum = dft(signal)
    energy = sum(abs(x) ** 2 for x in spectrum)
    parseval = len(signal) * sum(x * x for x in signal)
    assert abs(energy - parseval) <= 1e-9 * parseval

    rate = 0.25
    pend = pendulum_sequence(frames=16, fps=5.0, rate=rate)
    pend_result = analyze(pend, joints=(JointDef("elbow", 5, 7, 9),))
    for frame in pend_result.frames[1:]:
        assert abs(frame.joint_angular_velocities["elbow"] - rate) <= 1e-6

    frame = np.zeros((KEYPOINT_COUNT, 4))
    frame[:, 3] = 0.6
    frame[0, :3] = (1.0, 0.0, 0.0)
    frame[2, :3] = (0.0, 1.0, 0.0)
    assert joint_angle(frame, JointDef("j", 0, 1, 2)) is None  # 0.6 is excluded
    frame[:, 3] = np.nextafter(0.6, 1.0)
    assert joint_angle(frame, JointDef("j", 0, 1, 2)) is not None

    assert point_speed(three_four_five_sequence(), 0, 1) == 5.0
    print("PASS kinematic-invariants: rigid-motion, fps, Parseval, pendulum, boundary, 3-4-5")


def test_accept_08_dft_hand_case():
    """x=[1,-1,1,-1] concentrates all energy at the Nyquist bin."""
    magnitudes = [abs(x) for x in dft([1.0, -1.0, 1.0, -1.0])]
    for got, want in zip(magnitudes, [0.0, 0.0, 4.0, 0.0]):
        assert abs(got - want) <= 1e-12
    summary = spectral_summary([1.0, -1.0, 1.0, -1.0], [0.0] * 4, cutoff_bin=1)
    assert summary.highfreq_prop_v == 1.0
    oracle = [abs(x) for x in oracle_dft([1.0, -1.0, 1.0, -1.0])]
    for got, want in zip(magnitudes, oracle):
        assert abs(got - want) <= 1e-12
    print("PASS dft-hand-case: |X|=[0,0,4,0] within 1e-12 and highfreq_prop=1.0 at cutoff 1")


def _run_cli(args: list[str], hash_seed: str) -> bytes:
    env = dict(os.environ, PYTHONHASHSEED=hash_seed)
    proc = subprocess.run(
        [sys.executable, "-m", "mopekit", *args],
        capture_output=True,
        env=env,
        timeout=300,
    )
    assert proc.returncode == 0, proc.stderr.decode()
    return proc.stdout


def test_accept_09_cli_determinism(tmp_path):
    """parse and score produce byte-identical stdout across separate
    interpreter runs, including under different hash seeds."""
    penman = "\n\n".join("\n\n".join(f.penman) for f in FIXTURES)
    conllu = "\n".join(f.conllu for f in FIXTURES)
    penman_path = tmp_path / "corpus.penman"
    conllu_path = tmp_path / "corpus.conllu"
    penman_path.write_text(penman, encoding="utf-8")
    conllu_path.write_text(conllu, encoding="utf-8")

    pairs_path = tmp_path / "pairs.jsonl"
    with pairs_path.open("w", encoding="utf-8") as fh:
        for f in FIXTURES:
            caption = {"penman": f.penman, "conllu": f.conllu}
            fh.write(json.dumps({"id": f.name, "gen": caption, "ref": caption}) + "\n")

    parse_args = ["parse", str(penman_path), str(conllu_path)]
    score_args = ["score", str(pairs_path)]
    parse_runs = [_run_cli(parse_args, seed) for seed in ("1", "2")]
    score_runs = [_run_cli(score_args, seed) for seed in ("1", "2")]

    assert parse_runs[0] == parse_runs[1] and parse_runs[0]
    assert score_runs[0] == score_runs[1] and score_runs[0]
    print(
        "PASS cli-determinism: parse"
        f" ({len(parse_runs[0])} bytes) and score ({len(score_runs[0])} bytes)"
        " byte-identical across hash-seed-varied runs"
    )
