//! Plain-text polynomial files.
//!
//! ```text
//! # weights: 1 1 2 3
//! # vars: x0 x1 x2 x3
//! # params: a b
//! # field: Q
//! f: 2 * x0^2 x1 a + -1/3 * x2 x1 + 5
//! ```
//!
//! Terms are `coeff * tok tok ..` joined by ` + `; a token is `name` or
//! `name^e`, where `name` is a variable or a parameter. Parameters are
//! substituted at instantiation time.

use std::collections::BTreeMap;

use crate::field::parse_q;
use crate::{Field, FieldSpec, Monomial, Poly, RingError, Weights, Q};

/// One term over variables followed by parameters.
#[derive(Clone, Debug)]
pub struct RawTerm {
    pub coeff: Q,
    pub exps: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct PolyFile {
    pub header: BTreeMap<String, String>,
    pub weights: Weights,
    pub vars: Vec<String>,
    pub params: Vec<String>,
    pub entries: Vec<(String, Vec<RawTerm>)>,
}

impl PolyFile {
    pub fn parse(src: &str) -> Result<Self, RingError> {
        let mut header = BTreeMap::new();
        let mut body = Vec::new();
        for (ln, line) in src.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(h) = line.strip_prefix('#') {
                if let Some((k, v)) = h.split_once(':') {
                    header.insert(k.trim().to_string(), v.trim().to_string());
                }
                continue;
            }
            body.push((ln + 1, line));
        }
        let need = |k: &str| header.get(k).cloned().ok_or_else(|| RingError::Parse(format!("missing `{k}` header")));
        let weights: Weights = need("weights")?.parse()?;
        let vars: Vec<String> = need("vars")?.split_whitespace().map(String::from).collect();
        if vars.len() != weights.len() {
            return Err(RingError::Parse("vars and weights differ in length".into()));
        }
        let params: Vec<String> = header
            .get("params")
            .map(|p| p.split_whitespace().map(String::from).collect())
            .unwrap_or_default();
        let symbols: Vec<&str> = vars.iter().chain(&params).map(String::as_str).collect();
        let mut entries = Vec::new();
        for (ln, line) in body {
            let (name, rhs) = line
                .split_once(':')
                .ok_or_else(|| RingError::Parse(format!("line {ln}: expected `name: poly`")))?;
            let terms = parse_terms(rhs, &symbols).map_err(|e| RingError::Parse(format!("line {ln}: {e}")))?;
            entries.push((name.trim().to_string(), terms));
        }
        Ok(PolyFile { header, weights, vars, params, entries })
    }

    pub fn get(&self, name: &str) -> Option<&[RawTerm]> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, t)| t.as_slice())
    }

    /// Substitutes parameter values and returns a polynomial over the
    /// variables; the degree is inferred (homogeneity is checked).
    pub fn instantiate<F: Field>(&self, terms: &[RawTerm], params: &[F]) -> Result<Poly<F>, RingError> {
        if params.len() != self.params.len() {
            return Err(RingError::Parse(format!(
                "expected {} parameter values, got {}",
                self.params.len(),
                params.len()
            )));
        }
        let nv = self.vars.len();
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let mut c = F::from_q(&t.coeff).ok_or(RingError::BadDenominator)?;
            for (p, &e) in params.iter().zip(&t.exps[nv..]) {
                if e > 0 {
                    c *= p.pow(e as u64);
                }
            }
            out.push((Monomial(t.exps[..nv].to_vec()), c));
        }
        Poly::homogeneous(nv, out, &self.weights)
    }

    pub fn instantiate_named<F: Field>(&self, name: &str, params: &[F]) -> Result<Poly<F>, RingError> {
        let t = self.get(name).ok_or_else(|| RingError::Parse(format!("no entry `{name}`")))?;
        self.instantiate(t, params)
    }
}

fn parse_terms(rhs: &str, symbols: &[&str]) -> Result<Vec<RawTerm>, String> {
    let mut out = Vec::new();
    for (neg, t) in split_signed_terms(rhs)? {
        let mut coeff = Q::from_integer(if neg { (-1).into() } else { 1.into() });
        let mut exps = vec![0u32; symbols.len()];
        for tok in t.split(|c: char| c == '*' || c.is_whitespace()).filter(|x| !x.is_empty()) {
            if tok.starts_with(|c: char| c.is_ascii_digit()) {
                coeff *= parse_q(tok).ok_or_else(|| format!("bad coefficient `{tok}`"))?;
                continue;
            }
            let (name, e) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().map_err(|_| format!("bad exponent in `{tok}`"))?),
                None => (tok, 1),
            };
            let k = symbols.iter().position(|s| *s == name).ok_or_else(|| format!("unknown symbol `{name}`"))?;
            exps[k] += e;
        }
        if !coeff.is_zero() {
            out.push(RawTerm { coeff, exps });
        }
    }
    Ok(out)
}

/// Splits at top-level `+`/`-`; a sign right after another sign, `*` or `^`
/// belongs to the following term.
fn split_signed_terms(s: &str) -> Result<Vec<(bool, String)>, String> {
    let mut out = Vec::new();
    let mut neg = false;
    let mut cur = String::new();
    for c in s.chars() {
        if c == '+' || c == '-' {
            let prev = cur.trim_end().chars().last();
            if matches!(prev, None | Some('*') | Some('^')) {
                if prev == Some('^') {
                    return Err(format!("negative exponent in `{s}`"));
                }
                if c == '-' {
                    neg = !neg;
                }
                continue;
            }
            out.push((neg, std::mem::take(&mut cur)));
            neg = c == '-';
        } else {
            cur.push(c);
        }
    }
    if cur.trim().is_empty() {
        if out.is_empty() && !neg {
            return Ok(out);
        }
        return Err(format!("dangling sign in `{s}`"));
    }
    out.push((neg, cur));
    Ok(out)
}

/// Parses a single polynomial over the given variable names (no parameters).
pub fn parse_poly<F: Field>(s: &str, names: &[String], w: &Weights) -> Result<Poly<F>, RingError> {
    let syms: Vec<&str> = names.iter().map(String::as_str).collect();
    let terms = parse_terms(s, &syms).map_err(RingError::Parse)?;
    let mut out = Vec::new();
    for t in terms {
        out.push((Monomial(t.exps), F::from_q(&t.coeff).ok_or(RingError::BadDenominator)?));
    }
    Poly::homogeneous(names.len(), out, w)
}

/// Writes named polynomials with a header.
pub fn write_poly_file<F: Field>(w: &Weights, names: &[String], entries: &[(String, Poly<F>)]) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "# weights: {}\n",
        w.as_slice().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    ));
    s.push_str(&format!("# vars: {}\n", names.join(" ")));
    s.push_str(&format!("# field: {}\n", field_tag(F::spec())));
    for (n, p) in entries {
        s.push_str(&format!("{n}: {}\n", p.render(names)));
    }
    s
}

fn field_tag(f: FieldSpec) -> String {
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Fp;

    #[test]
    fn roundtrip() {
        let w = Weights::of(&[1, 1, 2, 3]);
        let names = crate::default_names(4);
        let p: Poly<Q> = parse_poly("2 * x0^2 x1 + -1/3 * x3 + 1 * x1 x2", &names, &w).unwrap();
        assert_eq!(p.degree(), Some(3));
        let text = write_poly_file(&w, &names, &[("p".into(), p.clone())]);
        let f = PolyFile::parse(&text).unwrap();
        let back: Poly<Q> = f.instantiate_named("p", &[]).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn parameters_substitute() {
        let src = "# weights: 1 2\n# vars: x y\n# params: a\nf: 3 * x^2 a^2 + 1 * y\n";
        let f = PolyFile::parse(src).unwrap();
        let p: Poly<Fp<65521>> = f.instantiate_named("f", &[Fp::new(2)]).unwrap();
        assert_eq!(p.render(&f.vars), "12 * x^2 + 1 * y");
        assert!(PolyFile::parse("# weights: 1 2\n# vars: x y\nf: 1 * x + 1 * y\n").unwrap()
            .instantiate_named::<Q>("f", &[])
            .is_err());
    }
}
