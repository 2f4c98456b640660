//! Canonical rendering of polynomials: terms by descending total degree, ties
//! broken by the higher power of `y`; monomials written `x^i*y^j`.

use crate::fields::{Elem, FieldCtx};
use crate::polyring::{BiPoly, UniPoly};

fn coeff_term(f: &FieldCtx, a: &Elem, mono: &str) -> String {
    let s = f.fmt_elem(a);
    let na = f.neg(a);
    let (neg, mag) = if s.starts_with('-') && !f.fmt_elem(&na).starts_with('-') {
        (true, na)
    } else {
        (false, a.clone())
    };
    let ms = f.fmt_elem(&mag);
    let body = if mono.is_empty() {
        if neg || !ms.contains(['+', '-']) {
            ms
        } else {
            format!("({ms})")
        }
    } else if f.is_one(&mag) {
        mono.to_string()
    } else if ms.contains(['+', '-']) {
        format!("({ms})*{mono}")
    } else {
        format!("{ms}*{mono}")
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn monomial(i: usize, j: usize, xv: &str, yv: &str) -> String {
    let part = |v: &str, e: usize| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    match (part(xv, i), part(yv, j)) {
        (a, b) if a.is_empty() => b,
        (a, b) if b.is_empty() => a,
        (a, b) => format!("{a}*{b}"),
    }
}

/// Renders `p` in the variables `xv`, `yv`.
pub fn format_poly_vars(p: &BiPoly, xv: &str, yv: &str) -> String {
    let f = p.field();
    let mut terms = p.terms();
    if terms.is_empty() {
        return "0".into();
    }
    terms.sort_by(|a, b| (b.0 + b.1).cmp(&(a.0 + a.1)).then(b.1.cmp(&a.1)));
    let mut s = String::new();
    for (i, j, a) in terms {
        let t = coeff_term(f, &a, &monomial(i, j, xv, yv));
        if !s.is_empty() && !t.starts_with('-') {
            s.push('+');
        }
        s.push_str(&t);
    }
    s
}

/// Renders `p` in `x` and `y`.
pub fn format_poly(p: &BiPoly) -> String {
    format_poly_vars(p, "x", "y")
}

/// Renders a univariate polynomial in the named variable.
pub fn format_uni(p: &UniPoly, var: &str) -> String {
    format_poly_vars(&BiPoly::from_x_poly(p), var, "y")
}

/// Renders `Σ c·x^i y^j z^t` from its terms `(i, j, t, c)`.
pub fn format_terms_xyz(f: &FieldCtx, terms: &[(usize, usize, usize, Elem)]) -> String {
    let mut terms: Vec<_> = terms.iter().filter(|t| !f.is_zero(&t.3)).collect();
    if terms.is_empty() {
        return "0".into();
    }
    terms.sort_by(|a, b| {
        (b.0 + b.1)
            .cmp(&(a.0 + a.1))
            .then(b.1.cmp(&a.1))
            .then(b.2.cmp(&a.2))
    });
    let mut s = String::new();
    for (i, j, t, a) in terms {
        let xy = monomial(*i, *j, "x", "y");
        let z = monomial(*t, 0, "z", "y");
        let mono = match (xy.is_empty(), z.is_empty()) {
            (true, _) => z,
            (_, true) => xy,
            _ => format!("{xy}*{z}"),
        };
        let term = coeff_term(f, a, &mono);
        if !s.is_empty() && !term.starts_with('-') {
            s.push('+');
        }
        s.push_str(&term);
    }
    s
}
