#!/usr/bin/env python3
"""Writes the example scenes in docs/scenes.

Expected values are computed here with numpy directly from the defining
formulas, independently of the C++ library.
"""

import json
import pathlib
import sys

import numpy as np

OUT = pathlib.Path(__file__).resolve().parent.parent / "docs" / "scenes"


def lit(m):
    """Matrix or scalar to the scene literal form."""
    m = np.asarray(m)
    if m.ndim == 0:
        z = complex(m)
        return z.real if abs(z.imag) == 0.0 else [z.real, z.imag]
    return [lit(x) for x in m]


def psd_sqrt(m):
    w, v = np.linalg.eigh(m)
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def tr(m):
    return complex(np.trace(m)).real


def proj(v):
    v = np.asarray(v, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def entropy(p, t):
    return 0.0 if p <= 1e-9 or t <= 1e-9 else -p * np.log(p / t)


def obs_lit(labels, effects, values=None):
    out = {"outcomes": labels, "effects": {l: lit(e) for l, e in zip(labels, effects)}}
    if values is not None:
        out["values"] = dict(zip(labels, values))
    return out


def family_lit(labels, effects):
    return {"outcomes": labels, "effects": {l: lit(e) for l, e in zip(labels, effects)}}


def write(name, description, objects, checks, tolerance=None):
    doc = {"description": description}
    if tolerance:
        doc["tolerance"] = tolerance
    doc["objects"] = objects
    doc["checks"] = checks
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")


def check(name, op, args, **kw):
    c = {"name": name, "check": op, "args": args}
    c.update(kw)
    return c


I2 = np.eye(2)
I3 = np.eye(3)

# A qubit state and effects used in several scenes.
RHO = np.array([[0.6, 0.2 + 0.1j], [0.2 - 0.1j, 0.4]])
RHO2 = np.array([[0.25, -0.1j], [0.1j, 0.75]])
A_EFF = np.array([[0.7, 0.2], [0.2, 0.4]])
B_EFF = np.array([[0.6, 0.1 - 0.2j], [0.1 + 0.2j, 0.3]])
C_EFF = np.diag([0.9, 0.2])
ALPHA = np.array([[0.3, 0.1 + 0.2j], [0.1 - 0.2j, 0.7]])
BETA = np.array([[0.8, -0.1], [-0.1, 0.2]])


def luders_operation():
    a, b, c, rho = A_EFF, B_EFF, C_EFF, RHO
    ra, rb = psd_sqrt(a), psd_sqrt(b)
    a_then_b = ra @ b @ ra
    nested = ra @ rb @ c @ rb @ ra
    d, e = np.diag([0.3, 0.8]), np.diag([0.5, 0.1])
    cond = tr(rho @ a_then_b) / tr(rho @ a)
    pa, pb = tr(rho @ a), tr(rho @ b)
    p_b_given_a = tr(rho @ a_then_b) / pa
    p_a_given_b = tr(rho @ rb @ a @ rb) / pb
    bayes2 = abs(p_b_given_a - pb * p_a_given_b / pa)
    objects = {
        "rho": {"state": lit(rho)},
        "a": {"effect": lit(a)},
        "b": {"effect": lit(b)},
        "c": {"effect": lit(c)},
        "d": {"effect": lit(d)},
        "e": {"effect": lit(e)},
        "a_then_b": {"effect": lit(a_then_b)},
        "La": {"operation": {"luders": "a"}},
        "Lb": {"operation": {"luders": "b"}},
        "Ld": {"operation": {"luders": "d"}},
        "Le": {"operation": {"luders": "e"}},
        "La_then_Lb": {"operation": {"compose": ["La", "Lb"]}},
        "L_a_then_b": {"operation": {"luders": "a_then_b"}},
    }
    checks = [
        check("measures a", "measured_effect", ["La"], expect_ref="a"),
        check("self dual on rho", "dual_apply", ["La", "rho"], expect=lit(ra @ rho @ ra)),
        check("apply to rho", "apply", ["La", "rho"], expect=lit(ra @ rho @ ra)),
        check("standard sequential product", "sequential_product", ["La", "b"], expect=lit(a_then_b)),
        check("trace of the output is P(a)", "prob", ["rho", "a"], expect=pa),
        check("conditional probability", "conditional_prob", ["rho", "La", "b"], expect=cond),
        check("bayes second rule fails for a, b", "bayes2_residual", ["rho", "La", "Lb"], expect=bayes2),
        check("a and b do not commute", "bayes2_algebraic_residual", ["La", "Lb"], expect_gt=1e-6),
        check("bayes second rule holds for commuting d, e", "bayes2_algebraic_residual", ["Ld", "Le"], expect=0.0),
        check("composition measures a then b", "measured_effect", ["La_then_Lb"], expect=lit(a_then_b)),
        check("nested sequential product", "dual_apply", ["La_then_Lb", "c"], expect=lit(nested)),
        check("composition is not the Lueders operation of a then b", "choi_distance",
              ["La_then_Lb", "L_a_then_b"], expect_gt=1e-6),
        check("maps differ", "maps_equal", ["La_then_Lb", "L_a_then_b"], expect=False),
        check("single Kraus operator", "kraus_count", ["La"], expect=1),
    ]
    write("luders_operation", "Lueders operation rho -> a^1/2 rho a^1/2", objects, checks)


def holevo_operation():
    a, b, c, alpha, beta, rho = A_EFF, B_EFF, C_EFF, ALPHA, BETA, RHO
    t_ab = tr(alpha @ b)
    t_bc = tr(beta @ c)
    t_ba = tr(beta @ a)
    p0, p1 = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
    gamma = np.array([[0.4, 0.3], [0.3, 0.6]])
    delta = np.array([[0.4, -0.2j], [0.2j, 0.6]])
    objects = {
        "rho": {"state": lit(rho)},
        "rho2": {"state": lit(RHO2)},
        "a": {"effect": lit(a)},
        "b": {"effect": lit(b)},
        "c": {"effect": lit(c)},
        "alpha": {"state": lit(alpha)},
        "beta": {"state": lit(beta)},
        "Ha": {"operation": {"holevo": {"effect": "a", "alpha": "alpha"}}},
        "Hb": {"operation": {"holevo": {"effect": "b", "alpha": "beta"}}},
        "Ha_then_Hb": {"operation": {"compose": ["Ha", "Hb"]}},
        "predicted": {"operation": {"holevo": {"effect": lit(t_ab * a), "alpha": "beta"}}},
        "P0": {"effect": lit(p0)},
        "P1": {"state": lit(p1)},
        "gamma": {"state": lit(gamma)},
        "delta": {"state": lit(delta)},
        "HP0_gamma": {"operation": {"holevo": {"effect": "P0", "alpha": "gamma"}}},
        "HP0_delta": {"operation": {"holevo": {"effect": "P0", "alpha": "delta"}}},
        "HP0_P1": {"operation": {"holevo": {"effect": "P0", "alpha": "P1"}}},
    }
    checks = [
        check("measures a", "measured_effect", ["Ha"], expect_ref="a"),
        check("apply prepares alpha", "apply", ["Ha", "rho"], expect=lit(tr(rho @ a) * alpha)),
        check("dual", "dual_apply", ["Ha", "b"], expect=lit(t_ab * a)),
        check("sequential product", "sequential_product", ["Ha", "b"], expect=lit(t_ab * a)),
        check("conditional probability is tr(alpha b)", "conditional_prob", ["rho", "Ha", "b"], expect=t_ab),
        check("independent of the state", "conditional_prob", ["rho2", "Ha", "b"], expect=t_ab),
        check("updated state is alpha", "updated_state", ["rho", "Ha"], expect_ref="alpha"),
        check("nested sequential product", "dual_apply", ["Ha_then_Hb", "c"], expect=lit(t_bc * t_ab * a)),
        check("composition is Holevo", "choi_distance", ["Ha_then_Hb", "predicted"], expect=0.0),
        check("bayes second rule criterion", "bayes2_algebraic_residual", ["Ha", "Hb"],
              expect=float(np.linalg.norm(t_ab * a - t_ba * b))),
        check("sharp equal effects with tr(gamma P0) = tr(delta P0)", "bayes2_algebraic_residual",
              ["HP0_gamma", "HP0_delta"], expect=0.0),
        check("rank one times rank one", "kraus_count", ["HP0_P1"], expect=1),
    ]
    write("holevo_operation", "Holevo operation rho -> tr(rho a) alpha", objects, checks)


def atomic_luders_bayes():
    phis = [np.array([1, 1, 1]) / np.sqrt(3), np.array([1, -1, 0]) / np.sqrt(2), np.array([1, 1, -2]) / np.sqrt(6)]
    phis = [p.astype(complex) for p in phis]
    phis[1] = phis[1] * 1j
    ps = [proj(p) for p in phis]
    rho = np.array([[0.5, 0.1, 0.05j], [0.1, 0.3, 0.0], [-0.05j, 0.0, 0.2]])
    a = np.array([[0.6, 0.1j, 0.0], [-0.1j, 0.5, 0.2], [0.0, 0.2, 0.4]])
    b0 = np.array([[0.7, 0.1, 0.0], [0.1, 0.2, 0.1j], [0.0, -0.1j, 0.5]])
    b1 = I3 - b0
    bvals = [1.5, -0.5]
    bt = bvals[0] * b0 + bvals[1] * b1
    w = [complex(p.conj() @ rho @ p).real for p in phis]
    pa = sum(wx * complex(p.conj() @ a @ p).real for wx, p in zip(w, phis))
    eb = sum(wx * complex(p.conj() @ bt @ p).real for wx, p in zip(w, phis))
    cond_a = sum(complex(p.conj() @ a @ p).real * P for p, P in zip(phis, ps))
    labels = ["x0", "x1", "x2"]
    objects = {
        "rho": {"state": lit(rho)},
        "a": {"effect": lit(a)},
        "A": {"observable": obs_lit(labels, ps)},
        "B": {"observable": obs_lit(["y0", "y1"], [b0, b1], bvals)},
        "I": {"instrument": {"luders": "A"}},
        "P0": {"effect": lit(ps[0])},
        "L0": {"operation": {"luders": "P0"}},
    }
    checks = [
        check("A is atomic", "is_atomic", ["P0"], expect=True),
        check("sequential product with an atom", "sequential_product", ["L0", "a"],
              expect=lit(complex(phis[0].conj() @ a @ phis[0]).real * ps[0])),
        check("B conditioned on an atom", "condition_subobservable", ["B", "L0"],
              expect=family_lit(["y0", "y1"], [ps[0] @ b0 @ ps[0], ps[0] @ b1 @ ps[0]])),
        check("a conditioned on A", "condition_effect", ["a", "I"], expect=lit(cond_a)),
        check("bayes first rule", "bayes1_check", ["rho", "I", "a"], expect={"lhs": pa, "mid": pa, "rhs": pa}),
        check("bayes first rule for expectations", "bayes1_expectation_check", ["rho", "I", "B"],
              expect={"lhs": eb, "mid": eb, "rhs": eb}),
        check("contextual expectation", "contextual_expectation", ["rho", "I", "B"], expect=eb),
    ]
    write("atomic_luders_bayes", "Atomic observable measured by its Lueders instrument", objects, checks)


def holevo_instrument_bayes():
    rho, a = RHO, B_EFF
    a0 = np.array([[0.7, 0.1], [0.1, 0.2]])
    a1 = I2 - a0
    al0 = np.array([[0.9, 0.1j], [-0.1j, 0.1]])
    al1 = np.array([[0.35, 0.0], [0.0, 0.65]])
    b0 = np.array([[0.3, 0.2], [0.2, 0.6]])
    b1 = I2 - b0
    bvals = [2.0, -1.0]
    bt = bvals[0] * b0 + bvals[1] * b1
    ax, alx = [a0, a1], [al0, al1]
    p = sum(tr(rho @ A) * tr(al @ a) for A, al in zip(ax, alx))
    e = sum(tr(rho @ A) * tr(al @ bt) for A, al in zip(ax, alx))
    cond = sum(tr(al @ a) * A for A, al in zip(ax, alx))
    objects = {
        "rho": {"state": lit(rho)},
        "a": {"effect": lit(a)},
        "A": {"observable": obs_lit(["0", "1"], ax)},
        "B": {"observable": obs_lit(["0", "1"], [b0, b1], bvals)},
        "alpha0": {"state": lit(al0)},
        "alpha1": {"state": lit(al1)},
        "H": {"instrument": {"holevo": {"observable": "A", "alphas": {"0": "alpha0", "1": "alpha1"}}}},
    }
    checks = [
        check("measures A", "measured_observable", ["H"], expect=family_lit(["0", "1"], ax)),
        check("a conditioned on A", "condition_effect", ["a", "H"], expect=lit(cond)),
        check("bayes first rule", "bayes1_check", ["rho", "H", "a"], expect={"lhs": p, "mid": p, "rhs": p}),
        check("bayes first rule for expectations", "bayes1_expectation_check", ["rho", "H", "B"],
              expect={"lhs": e, "mid": e, "rhs": e}),
        check("contextual expectation", "contextual_expectation", ["rho", "H", "B"], expect=e),
    ]
    write("holevo_instrument_bayes", "Observable measured by a Holevo instrument", objects, checks)


def holevo_composition():
    a0 = np.array([[0.7, 0.1], [0.1, 0.2]])
    a1 = I2 - a0
    b0 = np.array([[0.3, 0.2j], [-0.2j, 0.6]])
    b1 = I2 - b0
    al = [np.array([[0.9, 0.1j], [-0.1j, 0.1]]), np.array([[0.35, 0.0], [0.0, 0.65]])]
    be = [np.array([[0.5, 0.25], [0.25, 0.5]]), np.array([[0.2, -0.1], [-0.1, 0.8]])]
    ax, bx = [a0, a1], [b0, b1]
    labels, c_eff, targets = [], [], {}
    for x in range(2):
        for y in range(2):
            label = f"{x},{y}"
            labels.append(label)
            c_eff.append(tr(al[x] @ bx[y]) * ax[x])
            targets[label] = f"beta{y}"
    d, e = np.diag([0.3, 0.8]), np.diag([0.5, 0.1])
    ra = psd_sqrt(A_EFF)
    objects = {
        "A": {"observable": obs_lit(["0", "1"], ax)},
        "B": {"observable": obs_lit(["0", "1"], bx)},
        "C": {"observable": obs_lit(labels, c_eff)},
        "alpha0": {"state": lit(al[0])},
        "alpha1": {"state": lit(al[1])},
        "beta0": {"state": lit(be[0])},
        "beta1": {"state": lit(be[1])},
        "HA": {"instrument": {"holevo": {"observable": "A", "alphas": {"0": "alpha0", "1": "alpha1"}}}},
        "HB": {"instrument": {"holevo": {"observable": "B", "alphas": {"0": "beta0", "1": "beta1"}}}},
        "HC": {"instrument": {"holevo": {"observable": "C", "alphas": targets}}},
        "HA_then_HB": {"instrument": {"compose": ["HA", "HB"]}},
        "a": {"effect": lit(A_EFF)},
        "b": {"effect": lit(B_EFF)},
        "a_then_b": {"effect": lit(ra @ B_EFF @ ra)},
        "d": {"effect": lit(d)},
        "e": {"effect": lit(e)},
        "de": {"effect": lit(d @ e)},
        "La_then_Lb": {"operation": {"compose": [{"luders": "a"}, {"luders": "b"}]}},
        "L_a_then_b": {"operation": {"luders": "a_then_b"}},
        "Ld_then_Le": {"operation": {"compose": [{"luders": "d"}, {"luders": "e"}]}},
        "L_de": {"operation": {"luders": "de"}},
        "alpha": {"state": lit(ALPHA)},
        "beta": {"state": lit(BETA)},
        "Ha_then_Hb": {"operation": {"compose": [{"holevo": {"effect": "a", "alpha": "alpha"}},
                                                  {"holevo": {"effect": "b", "alpha": "beta"}}]}},
        "Hpredicted": {"operation": {"holevo": {"effect": lit(tr(ALPHA @ B_EFF) * A_EFF), "alpha": "beta"}}},
    }
    checks = [
        check("composed Holevo instruments are Holevo", "choi_distance", ["HA_then_HB", "HC"], expect=0.0),
        check("measured observable of the composition", "measured_observable", ["HA_then_HB"],
              expect=family_lit(labels, c_eff)),
        check("Lueders composition of non-commuting effects is not Lueders", "choi_distance",
              ["La_then_Lb", "L_a_then_b"], expect_gt=1e-6),
        check("Lueders composition of commuting effects is Lueders of the product", "choi_distance",
              ["Ld_then_Le", "L_de"], expect=0.0),
        check("Holevo operations compose to Holevo", "choi_distance", ["Ha_then_Hb", "Hpredicted"], expect=0.0),
    ]
    write("holevo_composition", "Composition of Holevo and of Lueders instruments", objects, checks)


def context_values(rho, ops_dual, bt, ct):
    """Generic contextual statistics from the conditioned stochastic operators."""
    bc, cc = ops_dual(bt), ops_dual(ct)
    eb, ec = tr(rho @ bc), tr(rho @ cc)
    cor = complex(np.trace(rho @ bc @ cc)) - eb * ec
    cor_cb = complex(np.trace(rho @ cc @ bc)) - eb * ec
    comm = complex(np.trace(rho @ (bc @ cc - cc @ bc)))
    var_b = tr(rho @ bc @ bc) - eb * eb
    var_c = tr(rho @ cc @ cc) - ec * ec
    return {
        "expectation_B": eb,
        "expectation_C": ec,
        "correlation": [cor.real, cor.imag],
        "covariance": 0.5 * (cor + cor_cb).real,
        "variance_B": var_b,
        "variance_C": var_c,
        "commutator_trace": [comm.real, comm.imag],
    }


def uncertainty_values(stats):
    cor = complex(*stats["correlation"])
    comm = complex(*stats["commutator_trace"])
    return {
        "correlation": stats["correlation"],
        "covariance": stats["covariance"],
        "variance_B": stats["variance_B"],
        "variance_C": stats["variance_C"],
        "commutator_trace": stats["commutator_trace"],
        "identity_residual": abs(0.25 * abs(comm) ** 2 + stats["covariance"] ** 2 - abs(cor) ** 2),
        "inequality_slack": stats["variance_B"] * stats["variance_C"] - abs(cor) ** 2,
    }


QUTRIT_RHO = np.array([[0.45, 0.1 - 0.05j, 0.05], [0.1 + 0.05j, 0.35, -0.1j], [0.05, 0.1j, 0.2]])
QB0 = np.array([[0.6, 0.2, 0.0], [0.2, 0.3, 0.1j], [0.0, -0.1j, 0.5]])
QC0 = np.array([[0.2, 0.0, 0.1], [0.0, 0.8, 0.0], [0.1, 0.0, 0.4]])
QC1 = np.array([[0.5, 0.1j, 0.0], [-0.1j, 0.1, 0.0], [0.0, 0.0, 0.3]])


def qutrit_bc():
    bx = [QB0, I3 - QB0]
    bvals = [1.0, -2.0]
    cx = [QC0, QC1, I3 - QC0 - QC1]
    cvals = [0.5, 1.5, -1.0]
    bt = sum(v * m for v, m in zip(bvals, bx))
    ct = sum(v * m for v, m in zip(cvals, cx))
    objs = {
        "B": {"observable": obs_lit(["0", "1"], bx, bvals)},
        "C": {"observable": obs_lit(["0", "1", "2"], cx, cvals)},
    }
    return objs, bt, ct


def sharp_luders_uncertainty():
    u = np.linalg.qr(np.array([[1.0, 0.2j, 0.3], [0.1, 1.0, -0.2], [0.0, 0.4j, 1.0]]))[0]
    p0 = proj(u[:, 0]) + proj(u[:, 1])
    p1 = proj(u[:, 2])
    rho = QUTRIT_RHO
    objs, bt, ct = qutrit_bc()
    ax = [p0, p1]
    stats = context_values(rho, lambda m: sum(A @ m @ A for A in ax), bt, ct)
    objects = {"rho": {"state": lit(rho)}, "A": {"observable": obs_lit(["0", "1"], ax)},
               "I": {"instrument": {"luders": "A"}}}
    objects.update(objs)
    checks = [
        check("closed form", "sharp_luders_closed_form", ["rho", "A", "B", "C"], expect=stats),
        check("generic engine", "context_stats", ["rho", "I", "B", "C"], expect=stats),
        check("uncertainty identity and inequality", "uncertainty_report", ["rho", "I", "B", "C"],
              expect=uncertainty_values(stats)),
        check("variance of B", "contextual_variance", ["rho", "I", "B"], expect=stats["variance_B"]),
    ]
    write("sharp_luders_uncertainty", "Contextual statistics for a sharp observable under Lueders", objects, checks)


def holevo_uncertainty():
    a0 = np.array([[0.5, 0.1, 0.0], [0.1, 0.3, 0.1j], [0.0, -0.1j, 0.6]])
    a1 = I3 - a0
    al0 = np.array([[0.6, 0.1, 0.0], [0.1, 0.3, 0.0], [0.0, 0.0, 0.1]])
    al1 = np.array([[0.2, 0.0, 0.1j], [0.0, 0.2, 0.0], [-0.1j, 0.0, 0.6]])
    rho = QUTRIT_RHO
    objs, bt, ct = qutrit_bc()
    ax, alx = [a0, a1], [al0, al1]
    stats = context_values(rho, lambda m: sum(tr(al @ m) * A for A, al in zip(ax, alx)), bt, ct)
    objects = {
        "rho": {"state": lit(rho)},
        "A": {"observable": obs_lit(["0", "1"], ax)},
        "alpha0": {"state": lit(al0)},
        "alpha1": {"state": lit(al1)},
        "H": {"instrument": {"holevo": {"observable": "A", "alphas": {"0": "alpha0", "1": "alpha1"}}}},
    }
    objects.update(objs)
    checks = [
        check("closed form", "holevo_closed_form", ["rho", "H", "B", "C"], expect=stats),
        check("generic engine", "context_stats", ["rho", "H", "B", "C"], expect=stats),
        check("uncertainty identity and inequality", "uncertainty_report", ["rho", "H", "B", "C"],
              expect=uncertainty_values(stats)),
    ]
    write("holevo_uncertainty", "Contextual statistics for an observable measured by a Holevo instrument",
          objects, checks)


def luders_entropy():
    a, b, rho = A_EFF, B_EFF, RHO
    ra = psd_sqrt(a)
    seq = ra @ b @ ra
    s_seq = entropy(tr(rho @ seq), tr(seq))
    out = ra @ rho @ ra
    s_cond = entropy(tr(out @ b), tr(b))
    objects = {"rho": {"state": lit(rho)}, "a": {"effect": lit(a)}, "b": {"effect": lit(b)},
               "La": {"operation": {"luders": "a"}}}
    checks = [
        check("criterion holds", "lemma31_criterion", ["La", "b"], expect=True),
        check("entropy of a", "effect_entropy", ["rho", "a"], expect=entropy(tr(rho @ a), tr(a))),
        check("sequential entropy", "sequential_entropy", ["rho", "La", "b"], expect=s_seq),
        check("conditional entropy", "conditional_effect_entropy", ["rho", "La", "b"], expect=s_cond),
        check("gap is non-negative", "entropy_gap", ["rho", "La", "b"], expect=s_cond - s_seq),
    ]
    write("luders_entropy", "Sequential and conditional entropies under a Lueders operation", objects, checks)


def holevo_entropy():
    # tr(alpha b) tr(a) > tr(b): the criterion fails, and every state violates the inequality.
    a = np.array([[0.95, 0.02], [0.02, 0.9]])
    b = np.array([[0.85, 0.05], [0.05, 0.1]])
    alpha = np.array([[0.95, 0.05], [0.05, 0.05]])
    rho = RHO
    t = tr(alpha @ b) * tr(a)
    assert t > tr(b)
    p = tr(rho @ a) * tr(alpha @ b)
    s_seq = entropy(p, t)
    s_cond = entropy(p, tr(b))
    # A second context where the criterion holds.
    alpha_ok = np.array([[0.1, 0.0], [0.0, 0.9]])
    assert tr(alpha_ok @ b) * tr(a) <= tr(b)

    # Observable entropies along a two-level chain.
    a0 = np.array([[0.7, 0.1], [0.1, 0.2]])
    ax = [a0, I2 - a0]
    alx = [np.array([[0.9, 0.1j], [-0.1j, 0.1]]), np.array([[0.35, 0.0], [0.0, 0.65]])]
    b0 = np.array([[0.3, 0.2], [0.2, 0.6]])
    bx = [b0, I2 - b0]
    c0 = np.array([[0.55, -0.15j], [0.15j, 0.25]])
    cx = [c0, I2 - c0]
    bar_i = lambda r: sum(tr(r @ A) * al for A, al in zip(ax, alx))
    bar_i_dual = lambda m: sum(tr(al @ m) * A for A, al in zip(ax, alx))
    rb = [psd_sqrt(B) for B in bx]
    bar_j = lambda r: sum(R @ r @ R for R in rb)
    bar_j_dual = bar_j
    after = bar_i(rho)
    double_iter = sum(entropy(tr(bar_j(after) @ C), tr(C)) for C in cx)
    double_comp = double_iter
    d = [bar_j_dual(C) for C in cx]
    single_iter = sum(entropy(tr(after @ D), tr(D)) for D in d)
    single_comp = sum(entropy(tr(rho @ bar_i_dual(D)), tr(bar_i_dual(D))) for D in d)
    objects = {
        "rho": {"state": lit(rho)},
        "a": {"effect": lit(a)},
        "b": {"effect": lit(b)},
        "alpha": {"state": lit(alpha)},
        "alpha_ok": {"state": lit(alpha_ok)},
        "Ha": {"operation": {"holevo": {"effect": "a", "alpha": "alpha"}}},
        "Ha_ok": {"operation": {"holevo": {"effect": "a", "alpha": "alpha_ok"}}},
        "A": {"observable": obs_lit(["0", "1"], ax)},
        "B": {"observable": obs_lit(["0", "1"], bx)},
        "C": {"observable": obs_lit(["0", "1"], cx)},
        "alpha0": {"state": lit(alx[0])},
        "alpha1": {"state": lit(alx[1])},
        "I": {"instrument": {"holevo": {"observable": "A", "alphas": {"0": "alpha0", "1": "alpha1"}}}},
        "J": {"instrument": {"luders": "B"}},
    }
    checks = [
        check("criterion fails", "lemma31_criterion", ["Ha", "b"], expect=False),
        check("sequential entropy", "sequential_entropy", ["rho", "Ha", "b"], expect=s_seq),
        check("conditional entropy", "conditional_effect_entropy", ["rho", "Ha", "b"], expect=s_cond),
        check("sequential entropy exceeds conditional entropy", "entropy_gap", ["rho", "Ha", "b"], expect_lt=0.0),
        check("gap value", "entropy_gap", ["rho", "Ha", "b"], expect=s_cond - s_seq),
        check("criterion holds for another target", "lemma31_criterion", ["Ha_ok", "b"], expect=True),
        check("double-bar chain", "double_bar_chain", ["rho", "I", "J", "C"],
              expect={"iterated": double_iter, "composed": double_comp}),
        check("single-bar chain", "single_bar_chain", ["rho", "I", "J", "C"],
              expect={"iterated": single_iter, "composed": single_comp}),
    ]
    assert abs(single_iter - single_comp) > 1e-6
    write("holevo_entropy", "Entropy criterion failing under a Holevo operation; observable entropy chains",
          objects, checks)


def main():
    luders_operation()
    holevo_operation()
    atomic_luders_bayes()
    holevo_instrument_bayes()
    holevo_composition()
    sharp_luders_uncertainty()
    holevo_uncertainty()
    luders_entropy()
    holevo_entropy()
    return 0


if __name__ == "__main__":
    sys.exit(main())
