import numpy as np
import pytest

from adhmkit.adhm import (AdhmConfig, BlowupConfig, config_distance, gauge_apply,
                          gauge_equivalent, integrability_residual, is_nondegenerate,
                          nondegenerate, random_gauge, random_nondegenerate,
                          random_nondegenerate_blowup, residual, second_chern)
from adhmkit.errors import (ConfigInvalid, DenominatorVanishes, OutOfChart, ShapeMismatch,
                            WrongDegree)
from adhmkit.gluing import (GluingContext, Isometry, boxplus_oo, boxplus_oy, boxplus_xo,
                            chart_modulus, from_delta_chart, glue_denominators, isometry_act,
                            pullback, to_delta_chart, translate, whitney_sum)


def standard():
    return AdhmConfig([[0]], [[0]], [[1, 0]], [[0], [1]])


@pytest.fixture
def ctx():
    return GluingContext((0, 0), (3, 0.5j), 1.0)


def in_chart(seed, ctx, r=2):
    return to_delta_chart(random_nondegenerate(1, r, seed), ctx)


@pytest.mark.parametrize("x,y,delta", [
    ((0, 0), (0, 1), 0.1),      # first coordinates too close
    ((0, 0), (1, 0), 2.0),      # delta above |x - y|
    ((0, 0), (1, 0), 0.0),
])
def test_context_rejects(x, y, delta):
    with pytest.raises(ConfigInvalid):
        GluingContext(x, y, delta)


def test_isometry_examples():
    alpha = Isometry.inclusion(2, 3)
    out = isometry_act(alpha, standard())
    assert np.array_equal(out.b, [[1, 0, 0]])
    assert np.array_equal(out.c, [[0], [1], [0]])
    same = isometry_act(Isometry.inclusion(2, 2), standard())
    assert config_distance(same, standard()) == 0
    with pytest.raises(ValueError):
        Isometry(np.ones((2, 2)))


def test_isometry_preserves_residual():
    rng = np.random.default_rng(0)
    for seed in range(20):
        cfg = random_nondegenerate(2, 2, seed)
        alpha = Isometry.random(2, 4, rng)
        assert abs(integrability_residual(isometry_act(alpha, cfg))
                   - integrability_residual(cfg)) < 1e-10


def test_whitney_sum():
    c = random_nondegenerate(1, 2, 3)
    s = whitney_sum(c, random_nondegenerate(2, 2, 4))
    assert second_chern(s) == 3 and s.r == 4
    assert residual(s) <= residual(c) + residual(random_nondegenerate(2, 2, 4)) + 1e-12
    with pytest.raises(ShapeMismatch):
        whitney_sum(c, pullback(c))


def test_whitney_sum_with_empty_is_unit():
    c = random_nondegenerate(1, 2, 3)
    s = whitney_sum(AdhmConfig.empty(0), c)
    assert config_distance(s, c) == 0


def test_pullback_examples():
    m = pullback(standard())
    assert isinstance(m, BlowupConfig)
    assert np.array_equal(m.d, [[1]]) and np.array_equal(m.b, [[1, 0]])
    cfg = random_nondegenerate(2, 2, 1)
    assert residual(pullback(cfg)) == pytest.approx(integrability_residual(cfg), abs=1e-14)


def test_pullback_choice_of_d_is_a_gauge():
    rng = np.random.default_rng(3)
    for seed in range(25):
        cfg = random_nondegenerate(2, 2, seed)
        d = random_gauge(2, rng).g1
        assert gauge_equivalent(pullback(cfg), pullback(cfg, d)) is not None


@pytest.mark.parametrize("a1,delta,expected", [(0.0, 0.1, 0.0), (1.0, 0.1, 0.05)])
def test_to_delta_chart_examples(a1, delta, expected):
    ctx = GluingContext((0, 0), (1, 0), delta)
    m = BlowupConfig([[a1]], [[0]], [[1]], [[1, 0]], [[0], [1]])
    assert chart_modulus(to_delta_chart(m, ctx)) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("a1,expected", [(0.0, 0.0), (0.05, 1.0)])
def test_from_delta_chart_examples(a1, expected):
    ctx = GluingContext((0, 0), (1, 0), 0.1)
    m = BlowupConfig([[a1]], [[0]], [[1]], [[1, 0]], [[0], [1]])
    assert chart_modulus(from_delta_chart(m, ctx)) == pytest.approx(expected, abs=1e-14)


def test_delta_chart_errors(ctx):
    far = BlowupConfig([[5.0]], [[0]], [[1]], [[1, 0]], [[0], [1]])
    with pytest.raises(OutOfChart):
        from_delta_chart(far, ctx)
    with pytest.raises(WrongDegree):
        to_delta_chart(random_nondegenerate_blowup(2, 2, 0), ctx)


def test_delta_chart_round_trips(ctx):
    for seed in range(50):
        m = random_nondegenerate_blowup(1, 2, seed)
        assert chart_modulus(to_delta_chart(m, ctx)) < ctx.delta
        assert config_distance(from_delta_chart(to_delta_chart(m, ctx), ctx), m) < 1e-12 * max(
            1, np.linalg.norm(m.a1))
        inside = to_delta_chart(m, ctx)
        assert config_distance(to_delta_chart(from_delta_chart(inside, ctx), ctx), inside) < 1e-12


def test_boxplus_worked_example():
    ctx = GluingContext((0, 0), (1, 0), 0.1)
    out = boxplus_oo(standard(), standard(), ctx)
    assert np.array_equal(out.a1, np.diag([0, 1]))
    assert np.array_equal(out.a2, np.zeros((2, 2)))
    assert np.array_equal(out.b, [[1, 0], [1, 0]])
    assert np.array_equal(out.c, [[0, 0], [1, 1]])
    assert integrability_residual(out) == 0
    assert is_nondegenerate(out) and second_chern(out) == 2


def test_boxplus_outputs_integrable_and_nondegenerate(ctx):
    for seed in range(200):
        c1, c2 = in_chart(2 * seed, ctx), in_chart(2 * seed + 1, ctx)
        m1 = to_delta_chart(random_nondegenerate_blowup(1, 2, seed), ctx)
        if min(glue_denominators(c1, c2, ctx), glue_denominators(m1, c2, ctx, "xo"),
               glue_denominators(c1, m1, ctx, "oy")) <= 0.1:
            continue
        for out in (boxplus_oo(c1, c2, ctx), boxplus_xo(m1, c2, ctx), boxplus_oy(c1, m1, ctx)):
            assert residual(out) < 1e-9
            assert second_chern(out) == 2
            assert nondegenerate(out)


def test_boxplus_independent_of_representative(ctx):
    rng = np.random.default_rng(1)
    for seed in range(20):
        c1, c2 = in_chart(2 * seed, ctx), in_chart(2 * seed + 1, ctx)
        g, h = (random_gauge(1, rng) for _ in range(2))
        moved = boxplus_oo(gauge_apply(g, c1), gauge_apply(h, c2), ctx)
        assert gauge_equivalent(moved, boxplus_oo(c1, c2, ctx)) is not None


def test_boxplus_guards(ctx):
    c = in_chart(0, ctx)
    with pytest.raises(WrongDegree):
        boxplus_oo(random_nondegenerate(2, 2, 0), c, ctx)
    with pytest.raises(ShapeMismatch):
        boxplus_oo(c, in_chart(1, ctx, r=3), ctx)
    with pytest.raises(ShapeMismatch):
        boxplus_xo(c, c, ctx)
    with pytest.raises(OutOfChart):
        boxplus_oo(random_nondegenerate(1, 2, 0).replace(a1=[[10.0]]), c, ctx)
    tight = GluingContext((0, 0), (1, 0), 0.1, tol=0.95)
    with pytest.raises(DenominatorVanishes):
        boxplus_oo(standard(), standard().replace(a1=[[-0.09]]), tight)


def test_pullback_compatibility_both_sides(ctx):
    # literal equality once the pullback re-centres at the blown-up point
    for seed in range(30):
        c1, c2 = in_chart(2 * seed, ctx), in_chart(2 * seed + 1, ctx)
        glued = boxplus_oo(c1, c2, ctx)
        x_side = boxplus_xo(pullback(c1), c2, ctx)
        y_side = boxplus_oy(c1, pullback(c2), ctx)
        assert config_distance(pullback(glued, center=ctx.x), x_side) < 1e-12
        assert config_distance(pullback(glued, center=ctx.y), y_side) < 1e-12


def test_isometry_equivariance(ctx):
    rng = np.random.default_rng(4)
    for seed in range(30):
        c1, c2 = in_chart(2 * seed, ctx), in_chart(2 * seed + 1, ctx)
        alpha = Isometry.random(2, 4, rng)
        lhs = isometry_act(alpha, boxplus_oo(c1, c2, ctx))
        rhs = boxplus_oo(isometry_act(alpha, c1), isometry_act(alpha, c2), ctx)
        assert config_distance(lhs, rhs) < 1e-12


def test_whitney_factorization_after_recentering(ctx):
    for seed in range(30):
        c1, c2 = in_chart(2 * seed, ctx), in_chart(2 * seed + 1, ctx)
        glued = boxplus_oo(isometry_act(Isometry.inclusion(2, 4, 0), c1),
                           isometry_act(Isometry.inclusion(2, 4, 2), c2), ctx)
        summed = whitney_sum(translate(c1, ctx.x), translate(c2, ctx.y))
        assert config_distance(glued, summed) < 1e-14
        # without re-centring the two differ by the translation, which is not a gauge
        assert gauge_equivalent(glued, whitney_sum(c1, c2)) is None
