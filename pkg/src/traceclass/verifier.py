"""Seeded ensemble runner for the operator identities and inequalities.

Each property is a function ``check(rng, n) -> Outcome`` evaluated on
``trials`` independent draws for every dimension ``n`` in the config.  An
outcome carries a signed, scale-normalised slack: for ``lhs <= rhs`` it is
``(lhs - rhs) / scale`` and for ``lhs == rhs`` it is ``|lhs - rhs| / scale``.
A trial fails when its slack exceeds the property tolerance
``tol_factor * config.tol_algebraic`` (or ``tol_stochastic`` for sampled
checks).

Random draws come from :func:`traceclass.ensembles.trial_rng`, keyed by
``(seed, property_id, dim, trial)``.
"""

import csv
import io as _stdio
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernel, schatten, tensor
from .ensembles import (
    ginibre,
    ginibre_vector,
    haar_unitary,
    random_contraction,
    random_low_rank,
    trial_rng,
    unit_vector,
)
from .errors import InputError, NTooSmallError, TraceClassError, UnknownPropertyError
from .io import matrix_to_json
from .oracles import charpoly_roots, mixed_costs, random_mixes

__all__ = [
    "SuiteConfig",
    "Property",
    "PropertyRecord",
    "VerificationReport",
    "Outcome",
    "REGISTRY",
    "IN_SCOPE_ANCHORS",
    "run_suite",
    "shift_report",
    "density_report",
    "missing_anchors",
]

_TINY = 1e-300
_MAX_EXAMPLES = 3


# ---------------------------------------------------------------- outcomes


@dataclass
class Outcome:
    slack: float = -math.inf
    witness: dict = field(default_factory=dict)
    worst: str = ""

    def le(self, label, lhs, rhs, scale=None):
        """Record ``lhs <= rhs``."""
        scale = _scale(scale, lhs, rhs)
        self._update(label, (lhs - rhs) / scale)
        return self

    def eq(self, label, lhs, rhs, scale=None):
        """Record ``lhs == rhs`` (complex values allowed)."""
        if scale is None:
            scale = max(abs(lhs), abs(rhs))
        scale = _scale(scale, 0.0, 0.0)
        self._update(label, abs(lhs - rhs) / scale)
        return self

    def _update(self, label, slack):
        slack = float(slack)
        if slack > self.slack or math.isnan(slack):
            self.slack = math.inf if math.isnan(slack) else slack
            self.worst = label

    def keep(self, **matrices):
        self.witness.update(matrices)
        return self


def _scale(scale, lhs, rhs):
    if scale is None:
        scale = max(abs(lhs), abs(rhs))
    return max(float(scale), 1e-12) if scale > _TINY else 1.0


def _norms(t):
    s = kernel.singular_values(t)
    return float(s[0]), float(np.sqrt(np.sum(s * s))), float(s.sum())


# ---------------------------------------------------------------- checks
# Each takes (rng, n) and returns an Outcome.


def _norm_chain(rng, n):
    t = ginibre(rng, n)
    op, hs, tr = _norms(t)
    out = Outcome().keep(T=t)
    out.le("op <= hs", op, hs)
    out.le("hs <= trace", hs, tr)
    out.le("hs^2 <= op*trace", hs * hs, op * tr)
    return out


def _ideal_bounds(rng, n):
    s, t = ginibre(rng, n), ginibre(rng, n)
    s_op = kernel.operator_norm(s)
    _, t_hs, t_tr = _norms(t)
    out = Outcome().keep(S=s, T=t)
    for label, prod in (("ST", s @ t), ("TS", t @ s)):
        _, hs, tr = _norms(prod)
        out.le(f"||{label}||_1 <= ||S|| ||T||_1", tr, s_op * t_tr)
        out.le(f"||{label}||_2 <= ||S|| ||T||_2", hs, s_op * t_hs)
    return out


def _adjoint_invariance(rng, n):
    t = ginibre(rng, n)
    _, hs, tr = _norms(t)
    _, hs_a, tr_a = _norms(t.conj().T)
    out = Outcome().keep(T=t)
    out.eq("||T*||_1 = ||T||_1", tr_a, tr)
    out.eq("||T*||_2 = ||T||_2", hs_a, hs)
    return out


def _triangle(rng, n):
    s, t = ginibre(rng, n), ginibre(rng, n)
    _, s2, s1 = _norms(s)
    _, t2, t1 = _norms(t)
    _, st2, st1 = _norms(s + t)
    out = Outcome().keep(S=s, T=t)
    out.le("||S+T||_1 <= ||S||_1 + ||T||_1", st1, s1 + t1)
    out.le("||S+T||_2 <= ||S||_2 + ||T||_2", st2, s2 + t2)
    return out


def _trace_identities(rng, n):
    s, t = ginibre(rng, n), ginibre(rng, n)
    s_op, s_hs, _ = _norms(s)
    _, t_hs, t_tr = _norms(t)
    out = Outcome().keep(S=s, T=t)
    out.eq("tr(TS) = tr(ST)", schatten.trace(t @ s), schatten.trace(s @ t), scale=s_hs * t_hs)
    out.eq("tr(T*) = conj tr(T)", schatten.trace(t.conj().T), np.conj(schatten.trace(t)), scale=t_tr)
    out.le("|tr T| <= ||T||_1", abs(schatten.trace(t)), t_tr)
    out.le("|tr(S|T|)| <= ||S|| ||T||_1", abs(schatten.trace(s @ kernel.abs_op(t))), s_op * t_tr)
    return out


def _hs_trace_identity(rng, n):
    t = ginibre(rng, n)
    _, hs, _ = _norms(t)
    a = kernel.abs_op(t)
    out = Outcome().keep(T=t)
    out.eq("||T||_2^2 = tr(T*T)", hs * hs, schatten.trace(t.conj().T @ t))
    out.eq("||T||_2^2 = || |T|^2 ||_1", hs * hs, schatten.trace_norm(a @ a))
    out.eq("||T||_2 = || |T| ||_2", hs, schatten.hs_norm(a))
    return out


def _hs_inner_product(rng, n):
    s, t = ginibre(rng, n), ginibre(rng, n)
    s_hs, t_hs = schatten.hs_norm(s), schatten.hs_norm(t)
    ip = schatten.hs_inner(t, s)
    basis_sum = complex(np.sum(np.einsum("ij,ij->j", s.conj(), t)))
    out = Outcome().keep(S=s, T=t)
    out.eq("<T;T>_2 = ||T||_2^2", schatten.hs_inner(t, t), t_hs * t_hs)
    out.eq("<T;S>_2 = sum_k <Te_k;Se_k>", ip, basis_sum, scale=s_hs * t_hs)
    out.eq("<T;S>_2 = conj <S;T>_2", ip, np.conj(schatten.hs_inner(s, t)), scale=s_hs * t_hs)
    out.le("|<T;S>_2| <= ||T||_2 ||S||_2", abs(ip), s_hs * t_hs)
    return out


def _lidskii(rng, n):
    t = ginibre(rng, n)
    eig_sum = complex(np.sum(charpoly_roots(t)))
    out = Outcome().keep(T=t)
    out.eq("tr T = sum of eigenvalues", schatten.trace(t), eig_sum, scale=schatten.trace_norm(t))
    return out


def _factorization(rng, n):
    t = ginibre(rng, n)
    a, b = schatten.factor_hs(t)
    out = Outcome().keep(T=t)
    out.le("||AB - T|| <= 0", kernel.operator_norm(a @ b - t), 0.0, scale=kernel.operator_norm(t))
    return out


def _factorization_norms(rng, n):
    t = ginibre(rng, n)
    a, b = schatten.factor_hs(t)
    out = Outcome().keep(T=t)
    out.eq("||A||_2 ||B||_2 = ||T||_1", schatten.hs_norm(a) * schatten.hs_norm(b), schatten.trace_norm(t))
    return out


def _basis_independence(rng, n, bases=50):
    t = ginibre(rng, n)
    tr1 = schatten.trace_norm(t)
    a = kernel.abs_op(t)
    qs = haar_unitary(rng, n, size=bases)
    diag_t = np.einsum("bik,ij,bjk->bk", qs.conj(), t, qs)
    diag_a = np.einsum("bik,ij,bjk->bk", qs.conj(), a, qs).real
    out = Outcome().keep(T=t)
    for k in range(bases):
        out.eq("sum <|T|b;b> = ||T||_1", float(diag_a[k].sum()), tr1)
        out.le("sum |<Tb;b>| <= ||T||_1", float(np.abs(diag_t[k]).sum()), tr1)
        out.eq("sum <Tb;b> = tr T", complex(diag_t[k].sum()), schatten.trace(t), scale=tr1)
    return out


def _density(rng, n):
    rank = int(rng.integers(1, n + 1))
    t = ginibre(rng, n) if rank == n else random_low_rank(rng, n, rank)
    s = kernel.singular_values(t)
    tr1 = float(s.sum())
    suffix = np.concatenate([np.cumsum(s[::-1])[::-1], [0.0]])
    out = Outcome().keep(T=t)
    prev = math.inf
    for k, residual in density_report(t):
        out.eq(f"||T - T_{k}||_1 = suffix sum", residual, suffix[k], scale=tr1)
        if prev < math.inf:
            out.le(f"residual nonincreasing at k={k}", residual, prev, scale=tr1)
        prev = residual
    out.le("final residual = 0", prev, 0.0, scale=tr1)
    return out


def _shift(rng, n):
    rec = shift_report(n)
    out = Outcome()
    out.le("sum |<Se_k;e_k>| = 0", rec["abs_diag_sum"], 0.0, scale=1.0)
    out.eq("||S||_1 = n - 1", rec["trace_norm"], float(n - 1), scale=1.0)
    return out


def _duality(rng, n, samples=500):
    t = ginibre(rng, n)
    tr1 = schatten.trace_norm(t)
    s, value = schatten.dual_attainment(t)
    out = Outcome().keep(T=t)
    out.eq("Re tr(ST) = ||T||_1", value, tr1)
    out.le("||S|| <= 1", kernel.operator_norm(s), 1.0, scale=1.0)
    sampled = random_contraction(rng, n, size=samples)
    vals = np.einsum("bij,ji->b", sampled, t).real
    out.le("sampled Re tr(S'T) <= value", float(vals.max()), value, scale=tr1)
    return out


def _random_element(rng, n, pairs, riesz=False):
    return tensor.TensorElement(n, n, ginibre_vector(rng, n, size=pairs), ginibre_vector(rng, n, size=pairs), riesz=riesz)


def _crossnorm_sandwich(rng, n):
    f = _random_element(rng, n, n + 1)
    pn, inj = tensor.projective_norm(f), tensor.injective_norm(f)
    out = Outcome()
    out.le("injective <= projective", inj, pn)
    out.le("projective <= representation cost", pn, tensor.representation_cost(f))
    return out


def _crossnorm_single(rng, n):
    x, y = ginibre_vector(rng, n), ginibre_vector(rng, n)
    f = tensor.single_tensor(x, y)
    target = float(np.linalg.norm(x) * np.linalg.norm(y))
    out = Outcome()
    out.eq("||x(x)y||_proj = ||x|| ||y||", tensor.projective_norm(f), target)
    out.eq("||x(x)y||_inj = ||x|| ||y||", tensor.injective_norm(f), target)
    return out


def _representation_invariance(rng, n):
    f = _random_element(rng, n, n + 1, riesz=bool(rng.integers(2)))
    m = tensor.coeff_matrix(f)
    pn, inj = tensor.projective_norm(f), tensor.injective_norm(f)
    g, _ = random_mixes(rng, len(f) + 2, 1)
    mixed = tensor.mix_representation(f, g[0])
    perm = rng.permutation(len(f))
    reordered = tensor.TensorElement(n, n, f.xs[perm], f.ys[perm], riesz=f.riesz)
    padded = tensor.pad_pairs(f, len(f) + 3)
    out = Outcome()
    scale = float(np.linalg.norm(m))
    for label, h in (("mixed", mixed), ("reordered", reordered), ("padded", padded)):
        out.eq(f"{label}: coeff matrix", float(np.linalg.norm(tensor.coeff_matrix(h) - m)), 0.0, scale=scale)
        out.eq(f"{label}: projective", tensor.projective_norm(h), pn)
        out.eq(f"{label}: injective", tensor.injective_norm(h), inj)
    out.le("projective <= mixed representation cost", pn, tensor.representation_cost(mixed))
    return out


def _kmap_contraction(rng, n):
    f = _random_element(rng, n, 4, riesz=True)
    k = tensor.k_map(f)
    x = ginibre_vector(rng, n)
    direct = sum(np.vdot(z, x) * y for z, y in f.pairs)
    out = Outcome()
    out.le("||K(F)|| <= ||F||_proj", kernel.operator_norm(k), tensor.projective_norm(f))
    out.eq("K(F)x = sum f_k(x) y_k", float(np.linalg.norm(k @ x - direct)), 0.0, scale=tensor.representation_cost(f) * np.linalg.norm(x))
    return out


def _kmap_single(rng, n):
    z, y = unit_vector(rng, n), ginibre_vector(rng, n)
    f = tensor.single_tensor(z, y, riesz=True)
    out = Outcome()
    out.eq("||K(f(x)y)|| = ||f|| ||y||", kernel.operator_norm(tensor.k_map(f)), float(np.linalg.norm(y)))
    out.eq("||K(f(x)y)|| = ||f(x)y||_proj", kernel.operator_norm(tensor.k_map(f)), tensor.projective_norm(f))
    return out


def _nuclear_equals_trace(rng, n, mixes=1000):
    t = ginibre(rng, n)
    tr1 = schatten.trace_norm(t)
    rep = tensor.optimal_rep(t)
    out = Outcome().keep(T=t)
    out.eq("nuclear_norm = ||T||_1", tensor.nuclear_norm(t), tr1)
    out.eq("cost(optimal_rep) = ||T||_1", tensor.rep_cost(rep), tr1)
    out.eq("optimal_rep reconstructs T", float(np.linalg.norm(tensor.to_matrix(rep) - t)), 0.0, scale=tr1)
    r = len(rep) + 2
    xs = np.vstack([rep.zs.conj(), np.zeros((r - len(rep), n))])
    ys = np.vstack([rep.ys, np.zeros((r - len(rep), n))])
    g, ginv = random_mixes(rng, r, mixes)
    costs = mixed_costs(xs, ys, g, ginv)
    out.le("||T||_1 <= cost of every mixed rep", tr1, float(costs.min()))
    return out


def _random_rep(rng, n, terms):
    return tensor.NuclearRep(n, ginibre_vector(rng, n, size=terms), ginibre_vector(rng, n, size=terms))


def _rep_cost_dominates(rng, n):
    rep = _random_rep(rng, n, n + 2)
    t = tensor.to_matrix(rep)
    nn = tensor.nuclear_norm(t)
    out = Outcome()
    out.le("||T||_N <= rep_cost", nn, tensor.rep_cost(rep))
    out.le("||T|| <= ||T||_N", kernel.operator_norm(t), nn)
    return out


def _nuclear_triangle(rng, n):
    a, b = _random_rep(rng, n, n), _random_rep(rng, n, n + 1)
    both = tensor.concat_reps(a, b)
    out = Outcome()
    out.eq("cost(A ++ B) = cost(A) + cost(B)", tensor.rep_cost(both), tensor.rep_cost(a) + tensor.rep_cost(b))
    s, t = tensor.to_matrix(a), tensor.to_matrix(b)
    out.le("||S+T||_N <= ||S||_N + ||T||_N", tensor.nuclear_norm(s + t), tensor.nuclear_norm(s) + tensor.nuclear_norm(t))
    return out


def _composition(rng, n):
    rep = _random_rep(rng, n, n + 1)
    left, right = ginibre(rng, n), ginibre(rng, n)
    comp = tensor.compose_rep(left, rep, right)
    t = tensor.to_matrix(rep)
    lop, rop = kernel.operator_norm(left), kernel.operator_norm(right)
    out = Outcome().keep(L=left, R=right, T=t)
    out.eq("matrix(compose) = L T R", float(np.linalg.norm(tensor.to_matrix(comp) - left @ t @ right)), 0.0,
           scale=lop * rop * float(np.linalg.norm(t)))
    out.le("cost(compose) <= ||L|| cost ||R||", tensor.rep_cost(comp), lop * tensor.rep_cost(rep) * rop)
    out.le("||LTR||_N <= ||L|| ||T||_N ||R||", tensor.nuclear_norm(left @ t @ right), lop * tensor.nuclear_norm(t) * rop)
    return out


def _adjoint_rep(rng, n):
    rep = _random_rep(rng, n, n + 1)
    adj = tensor.adjoint_rep(rep)
    t = tensor.to_matrix(rep)
    out = Outcome().keep(T=t)
    out.eq("matrix(adjoint_rep) = T*", float(np.linalg.norm(tensor.to_matrix(adj) - t.conj().T)), 0.0,
           scale=float(np.linalg.norm(t)))
    out.eq("cost(adjoint_rep) = cost", tensor.rep_cost(adj), tensor.rep_cost(rep))
    out.eq("||T*||_N = ||T||_N", tensor.nuclear_norm(t.conj().T), tensor.nuclear_norm(t))
    return out


def _linearization(rng, n):
    m = ginibre(rng, n)
    phi = tensor.BilinearForm(m)
    lin = tensor.linearize(phi)
    sigma = tensor.bilinear_norm(phi)
    f = _random_element(rng, n, n + 1)
    pn = tensor.projective_norm(f)
    value = tensor.apply_linearized(lin, f)
    direct = sum(phi(x, y) for x, y in f.pairs)
    u, _, v = kernel.svd(m)
    top = tensor.apply_linearized(lin, tensor.single_tensor(u[:, 0].conj(), v[:, 0]))
    out = Outcome().keep(M=m)
    out.eq("bilinearize(linearize(phi)) = phi",
           float(np.linalg.norm(tensor.bilinearize(lin).coeffs - m)), 0.0, scale=float(np.linalg.norm(m)))
    out.eq("Phi(F) = sum phi(x_i, y_i)", value, direct, scale=sigma * tensor.representation_cost(f))
    out.le("|Phi(F)| <= ||phi|| ||F||_proj", abs(value), sigma * pn)
    out.eq("sup attained on a single tensor", abs(top), sigma)
    return out


def _abs_polar(rng, n):
    rank = int(rng.integers(1, n + 1))
    t = ginibre(rng, n) if rank == n else random_low_rank(rng, n, rank)
    w, p = kernel.polar(t)
    op = kernel.operator_norm(t)
    s = kernel.singular_values(t)
    proj = w.conj().T @ w
    x = ginibre_vector(rng, n)
    out = Outcome().keep(T=t)
    out.le("||WP - T|| <= 0", kernel.operator_norm(w @ p - t), 0.0, scale=op)
    out.eq("W*W idempotent", float(np.linalg.norm(proj @ proj - proj)), 0.0, scale=1.0)
    out.eq("tr W*W = rank", float(np.trace(proj).real), float(kernel.support_mask(s).sum()), scale=1.0)
    out.eq("||T|| = || |T| ||", kernel.operator_norm(p), op)
    out.eq("||T|| = ||T*||", kernel.operator_norm(t.conj().T), op)
    out.eq("||Tx|| = || |T| x ||", float(np.linalg.norm(p @ x)), float(np.linalg.norm(t @ x)),
           scale=op * float(np.linalg.norm(x)))
    eig, _ = kernel.hermitian_eig(p)
    out.eq("spectrum of |T| = singular values", float(np.abs(eig - s).max()), 0.0, scale=op)
    return out


# ---------------------------------------------------------------- registry


@dataclass(frozen=True)
class Property:
    id: str
    anchor: str
    check: object
    description: str = ""
    tol_factor: float = 1.0
    stochastic: bool = False
    min_dim: int = 1
    max_dim: int = None

    def tolerance(self, config):
        base = config.tol_stochastic if self.stochastic else config.tol_algebraic
        return self.tol_factor * base

    def applies(self, n):
        return n >= self.min_dim and (self.max_dim is None or n <= self.max_dim)


REGISTRY = {
    p.id: p
    for p in [
        Property("norm_chain", "Thm 5.2(c); Lemma 5.1(d)", _norm_chain,
                 "||T|| <= ||T||_2 <= ||T||_1 and ||T||_2^2 <= ||T|| ||T||_1"),
        Property("ideal_bounds", "Thm 5.2(e); Lemma 5.1(b)", _ideal_bounds,
                 "||ST||_p, ||TS||_p <= ||S|| ||T||_p for p = 1, 2"),
        Property("adjoint_invariance", "Thm 5.2(f); Lemma 5.1(e)", _adjoint_invariance,
                 "||T*||_p = ||T||_p for p = 1, 2", tol_factor=0.1),
        Property("triangle", "Thm 5.2 Claims 1-2", _triangle,
                 "triangle inequality for ||.||_1 and ||.||_2"),
        Property("trace_identities", "Thm 5.2 Claim 3", _trace_identities,
                 "tr(TS) = tr(ST), tr(T*) = conj tr(T), |tr T| <= ||T||_1, |tr(S|T|)| <= ||S|| ||T||_1"),
        Property("hs_trace_identity", "§5 (||T||_2^2 = || |T|^2 ||_1)", _hs_trace_identity,
                 "||T||_2^2 = tr(T*T) = || |T|^2 ||_1"),
        Property("hs_inner_product", "Remark 5.6", _hs_inner_product,
                 "Hilbert-Schmidt inner product identities and Schwarz inequality"),
        Property("lidskii", "§1 (trace = sum of eigenvalues)", _lidskii,
                 "tr T equals the sum of the characteristic-polynomial roots", tol_factor=100.0, max_dim=4),
        Property("factorization", "Thm 5.2(b)", _factorization, "T = AB with A, B Hilbert-Schmidt"),
        Property("factorization_norms", "Thm 5.2(b)", _factorization_norms,
                 "||A||_2 ||B||_2 = ||T||_1 for the polar factorization", tol_factor=10.0),
        Property("basis_independence", "§5 Claim 3(i); Remark 5.4", _basis_independence,
                 "sum <|T|b;b> = ||T||_1 and sum |<Tb;b>| <= ||T||_1 in 50 random bases"),
        Property("density", "Thm 5.5(b)", _density,
                 "rank-k truncation residuals are singular-value suffix sums and reach 0"),
        Property("shift", "Remark 5.4(c)", _shift,
                 "truncated shift: zero diagonal, trace norm n - 1", min_dim=2),
        Property("duality", "§5 (trace duality, B_1* = B)", _duality,
                 "W* attains sup_{||S|| <= 1} Re tr(ST) = ||T||_1", tol_factor=10.0),
        Property("crossnorm_sandwich", "§3 property (v); Thm 3.1", _crossnorm_sandwich,
                 "injective <= projective <= cost of any representation"),
        Property("crossnorm_single", "§3 property (i)", _crossnorm_single,
                 "both crossnorms equal ||x|| ||y|| on x (x) y", tol_factor=0.1),
        Property("representation_invariance", "§3; Thm 3.1", _representation_invariance,
                 "coefficients and crossnorms ignore mixing, reordering and zero padding"),
        Property("kmap_contraction", "Thm 4.1", _kmap_contraction, "||K(F)|| <= ||F||_proj"),
        Property("kmap_single", "Thm 4.1", _kmap_single, "K attains norm one on single tensors"),
        Property("nuclear_equals_trace", "Thm 6.1", _nuclear_equals_trace,
                 "nuclear norm = trace norm; 1000 mixed representations never beat it"),
        Property("rep_cost_dominates", "Thm 4.1(c)", _rep_cost_dominates,
                 "||T|| <= ||T||_N <= cost of any representation"),
        Property("nuclear_triangle", "Thm 4.1(c)", _nuclear_triangle,
                 "concatenated representations add costs; nuclear triangle inequality"),
        Property("composition", "Cor 4.2", _composition, "representation of LTR and ||LTR||_N bound"),
        Property("adjoint_rep", "Cor 4.3", _adjoint_rep, "representation of T* with equal cost", tol_factor=0.1),
        Property("linearization", "Thm 3.2", _linearization,
                 "bilinear forms <-> functionals on the projective tensor product, isometrically"),
        Property("abs_polar", "§5 (||T|| = || |T| ||); Prop 5.3", _abs_polar,
                 "polar decomposition, partial isometry and |T| norm identities"),
    ]
}

# Anchors every full suite must exercise.
IN_SCOPE_ANCHORS = (
    "§3 property (i)",
    "§3 property (v)",
    "Thm 3.1",
    "Thm 3.2",
    "Thm 4.1",
    "Cor 4.2",
    "Cor 4.3",
    "§5 (||T|| = || |T| ||)",
    "Lemma 5.1(b)",
    "Lemma 5.1(d)",
    "Lemma 5.1(e)",
    "Thm 5.2(b)",
    "Thm 5.2(c)",
    "Thm 5.2(e)",
    "Thm 5.2(f)",
    "Claim 3",
    "Prop 5.3",
    "Remark 5.4",
    "Remark 5.4(c)",
    "Thm 5.5(b)",
    "Remark 5.6",
    "trace duality",
    "trace = sum of eigenvalues",
    "Thm 6.1",
)


def missing_anchors(registry=None):
    registry = REGISTRY if registry is None else registry
    anchors = " | ".join(p.anchor for p in registry.values())
    return [a for a in IN_SCOPE_ANCHORS if a not in anchors]


# ---------------------------------------------------------------- config and report


@dataclass(frozen=True)
class SuiteConfig:
    dims: tuple = (2, 4, 8)
    trials: int = 200
    seed: int = 42
    tol_algebraic: float = 1e-9
    tol_stochastic: float = 1e-6
    properties: tuple = ("all",)
    threads: int = None

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        props = (self.properties,) if isinstance(self.properties, str) else tuple(self.properties)
        object.__setattr__(self, "properties", props)
        if not self.dims or any(d < 1 for d in self.dims):
            raise InputError("dims must be a nonempty list of positive integers")
        if self.trials < 1:
            raise InputError("trials must be >= 1")
        if not (self.tol_algebraic > 0 and self.tol_stochastic > 0):
            raise InputError("tolerances must be positive")
        if not 0 <= self.seed < 2**64:
            raise InputError("seed must be a 64-bit unsigned integer")

    def echo(self):
        return {
            "dims": list(self.dims),
            "trials": self.trials,
            "seed": self.seed,
            "tol_algebraic": self.tol_algebraic,
            "tol_stochastic": self.tol_stochastic,
            "properties": list(self.properties),
        }


@dataclass
class PropertyRecord:
    property_id: str
    paper_anchor: str
    tolerance: float
    trials_run: int = 0
    failures: int = 0
    max_violation: float = None
    elapsed_ms: float = 0.0
    failure_examples: list = field(default_factory=list)

    @property
    def passed(self):
        return self.failures == 0

    def to_dict(self, include_timing=True):
        d = {
            "property_id": self.property_id,
            "paper_anchor": self.paper_anchor,
            "tolerance": self.tolerance,
            "trials_run": self.trials_run,
            "failures": self.failures,
            "max_violation": _json_float(self.max_violation),
            "passed": self.passed,
            "failure_examples": self.failure_examples,
        }
        if include_timing:
            d["elapsed_ms"] = round(self.elapsed_ms, 3)
        return d


@dataclass
class VerificationReport:
    config: SuiteConfig
    records: list

    @property
    def passed(self):
        return all(r.passed for r in self.records)

    def record(self, property_id):
        for r in self.records:
            if r.property_id == property_id:
                return r
        raise KeyError(property_id)

    def to_dict(self, include_timing=True):
        return {
            "config": self.config.echo(),
            "properties": [r.to_dict(include_timing) for r in self.records],
            "passed": self.passed,
        }

    def to_json(self, include_timing=True, indent=2):
        return json.dumps(self.to_dict(include_timing), indent=indent, allow_nan=False)

    def to_csv(self):
        buf = _stdio.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["property_id", "trials", "failures", "max_violation"])
        for r in self.records:
            w.writerow([r.property_id, r.trials_run, r.failures, _json_float(r.max_violation)])
        return buf.getvalue()


def _json_float(x):
    if x is None:
        return None
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x)


# ---------------------------------------------------------------- runner


def _resolve(properties, registry):
    if "all" in properties:
        return list(registry.values())
    unknown = [p for p in properties if p not in registry]
    if unknown:
        raise UnknownPropertyError(
            f"unknown properties {unknown}; known: {', '.join(registry)}"
        )
    return [registry[p] for p in dict.fromkeys(properties)]


def _evaluate(prop, seed, n, trial):
    rng = trial_rng(seed, prop.id, n, trial)
    try:
        with np.errstate(all="ignore"):
            return prop.check(rng, n), None
    except (TraceClassError, np.linalg.LinAlgError, ValueError, ArithmeticError) as exc:
        return None, f"{type(exc).__name__}: {exc}"


def _default_threads():
    try:
        return max(1, int(os.environ.get("TRACECLASS_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(config, registry=None):
    """Evaluate the requested properties and return a :class:`VerificationReport`.

    ``registry`` defaults to :data:`REGISTRY`; pass a custom mapping to run
    extra (or deliberately broken) properties.  Numerical errors inside a
    trial count as failures rather than propagating.
    """
    registry = REGISTRY if registry is None else registry
    props = _resolve(config.properties, registry)
    threads = config.threads or _default_threads()
    records = []
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        for prop in props:
            tol = prop.tolerance(config)
            rec = PropertyRecord(prop.id, prop.anchor, tol)
            start = time.perf_counter()
            cells = [(n, k) for n in config.dims if prop.applies(n) for k in range(config.trials)]
            jobs = ((prop, config.seed, n, k) for n, k in cells)
            if pool is None:
                results = [_evaluate(*job) for job in jobs]
            else:
                results = list(pool.map(lambda job: _evaluate(*job), jobs))
            # fold in fixed (dim, trial) order
            for (n, k), (outcome, error) in zip(cells, results):
                rec.trials_run += 1
                slack = math.inf if error else outcome.slack
                if rec.max_violation is None or slack > rec.max_violation:
                    rec.max_violation = slack
                if error or slack > tol:
                    rec.failures += 1
                    if len(rec.failure_examples) < _MAX_EXAMPLES:
                        rec.failure_examples.append(_failure_entry(n, k, outcome, error))
            rec.elapsed_ms = 1000.0 * (time.perf_counter() - start)
            records.append(rec)
    finally:
        if pool is not None:
            pool.shutdown()
    return VerificationReport(config, records)


def _failure_entry(n, trial, outcome, error):
    entry = {"dim": n, "trial": trial}
    if error:
        entry["error"] = error
        return entry
    entry["slack"] = _json_float(outcome.slack)
    entry["assertion"] = outcome.worst
    entry["witness"] = {name: matrix_to_json(m) for name, m in outcome.witness.items()}
    return entry


# ---------------------------------------------------------------- named reports


def shift_report(n):
    """Standard-basis diagonal data of the ``n x n`` truncated shift.

    ``ratio`` is ``trace_norm / abs_diag_sum``; it is ``inf`` whenever the
    diagonal sum vanishes, which it always does.
    """
    if n < 2:
        raise NTooSmallError(f"shift needs n >= 2, got {n}")
    s = schatten.shift_matrix(n)
    _, abs_sum, _ = schatten.basis_trace_sums(s, np.eye(n))
    tn = schatten.trace_norm(s)
    ratio = math.inf if abs_sum == 0.0 else tn / abs_sum
    return {"n": n, "abs_diag_sum": abs_sum, "trace_norm": tn, "ratio": ratio}


def density_report(t):
    """``[(k, ||T - T_k||_1) for k = 0..n]`` for the rank-k spectral truncations ``T_k``."""
    t = kernel.require_square(t)
    return [(k, schatten.trace_norm(t - schatten.truncate_spectral(t, k))) for k in range(t.shape[0] + 1)]
