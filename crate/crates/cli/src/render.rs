//! LaTeX and plain-text renderings of series in `1/M` with coefficients
//! in `ℚ(i)(ε)`.

use num::{Signed, Zero};
use weingarten::{EpsPolynomial, EpsRational, GaussianRational, MSeries, Rational};

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Latex,
    Text,
}

impl Style {
    fn eps(self) -> &'static str {
        match self {
            Style::Latex => "\\epsilon",
            Style::Text => "ε",
        }
    }

    fn pow(self, base: &str, k: i64) -> String {
        match (self, k) {
            (_, 1) => base.to_string(),
            (Style::Latex, 0..=9) => format!("{base}^{k}"),
            (Style::Latex, _) => format!("{base}^{{{k}}}"),
            (Style::Text, _) => format!("{base}^{k}"),
        }
    }

    fn rational(self, r: &Rational) -> String {
        if r.is_integer() {
            r.to_string()
        } else {
            match self {
                Style::Latex => format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom()),
                Style::Text => r.to_string(),
            }
        }
    }
}

/// A Gaussian rational as a factor in front of `ε^k`. Returns the sign
/// separately when the value is a negative real or negative imaginary.
fn gauss_factor(z: &GaussianRational, style: Style, bare_unit: bool) -> (bool, String) {
    let (neg, body) = if z.im.is_zero() {
        (z.re.is_negative(), style.rational(&z.re.abs()))
    } else if z.re.is_zero() {
        let b = z.im.abs();
        let s = if b == Rational::from_integer(1.into()) {
            "i".to_string()
        } else {
            format!("{}i", style.rational(&b))
        };
        (z.im.is_negative(), s)
    } else {
        let im = if z.im.is_negative() { "-" } else { "+" };
        let b = z.im.abs();
        let b = if b == Rational::from_integer(1.into()) {
            String::new()
        } else {
            style.rational(&b)
        };
        (false, format!("({}{im}{b}i)", style.rational(&z.re)))
    };
    if bare_unit && body == "1" {
        (neg, String::new())
    } else {
        (neg, body)
    }
}

/// Polynomial in ε, highest power first, e.g. `2i\epsilon-1`.
fn poly(p: &EpsPolynomial, style: Style) -> String {
    let mut out = String::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let (neg, mut body) = gauss_factor(c, style, k > 0);
        if k > 0 {
            body.push_str(&style.pow(style.eps(), k as i64));
        }
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn nonzero_terms(p: &EpsPolynomial) -> usize {
    p.coeffs().iter().filter(|c| !c.is_zero()).count()
}

/// One term `c(ε) / M^k`, with its sign split off.
fn term(c: &EpsRational, k: i64, style: Style) -> (bool, String) {
    let mut num = c.num().clone();
    let mut neg = false;
    if nonzero_terms(&num) == 1 {
        let lead = num.leading().expect("nonzero");
        if lead.re.is_negative() || (lead.re.is_zero() && lead.im.is_negative()) {
            neg = true;
            num = -num;
        }
    }
    let mut den = Vec::new();
    match c.one_minus_i_eps_power() {
        Some(0) => {}
        Some(p) => den.push(style.pow(&format!("(1-i{})", style.eps()), p as i64)),
        None => den.push(format!("({})", poly(c.den(), style))),
    }
    let (m_num, m_den) = match k {
        0 => (None, None),
        // positive powers of M sit in the numerator
        k if k < 0 => (Some(style.pow("M", -k)), None),
        k => (None, Some(style.pow("M", k))),
    };
    den.extend(m_den);
    let num_s = poly(&num, style);
    let s = match style {
        Style::Latex => {
            let num_s = match m_num {
                Some(m) if num_s == "1" => m,
                Some(m) => format!("({num_s}){m}"),
                None => num_s,
            };
            if den.is_empty() {
                num_s
            } else {
                format!("\\frac{{{num_s}}}{{{}}}", den.join(""))
            }
        }
        Style::Text => {
            let num_s = match m_num {
                Some(m) if num_s == "1" => m,
                Some(m) => format!("({num_s}) {m}"),
                None if nonzero_terms(&num) > 1 && !den.is_empty() => format!("({num_s})"),
                None => num_s,
            };
            match den.len() {
                0 => num_s,
                1 => format!("{num_s}/{}", den[0]),
                _ => format!("{num_s}/({})", den.join(" ")),
            }
        }
    };
    (neg, s)
}

/// The series followed by its `O(1/M^{trunc+1})` remainder.
pub fn series(s: &MSeries, style: Style) -> String {
    let (plus, minus) = match style {
        Style::Latex => ("+", "-"),
        Style::Text => (" + ", " - "),
    };
    let mut out = String::new();
    for (&k, c) in s.terms() {
        let (neg, body) = term(c, k, style);
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(minus),
            (false, false) => out.push_str(plus),
        }
        out.push_str(&body);
    }
    let next = s.trunc() + 1;
    let tail = match style {
        Style::Latex => format!("O\\left(\\frac{{1}}{{{}}}\\right)", style.pow("M", next)),
        Style::Text => format!("O(M^-{next})"),
    };
    if out.is_empty() {
        tail
    } else {
        format!("{out}{plus}{tail}")
    }
}

/// A rational number on its own.
pub fn rational(r: &Rational, style: Style) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}{}", style.rational(&r.abs()))
}
