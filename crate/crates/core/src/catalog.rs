//! Example dual generators, each with its documented variable order.
//!
//! | family            | variables            | degree |
//! |-------------------|----------------------|--------|
//! | `fermat`          | x,y,z,w or x1..xn    | n      |
//! | `stanley`         | u,v,w,x1..x10        | 4      |
//! | `stacked_squares` | u,v,x0..xn           | n + 2  |
//! | `quintic5`        | u,v,x,y,z            | 5      |
//! | `ikeda`           | x,y,z,w              | 5      |
//! | `s3_coinvariant`  | x,y,z                | 3      |
//! | `wz_zero_hessian` | x0,x1,x3,u,v         | 3      |

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, rat, Exponent, Form, Poly, Rational};

pub const FAMILIES: &[&str] = &[
    "fermat",
    "stanley",
    "stacked_squares",
    "quintic5",
    "ikeda",
    "s3_coinvariant",
    "wz_zero_hessian",
];

/// Largest `n` accepted by the parameterized families.
pub const MAX_N: u32 = 32;

/// Order of the ten cubic monomials `M_i` in Stanley's example.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StanleyOrdering {
    Grevlex,
    Lex,
}

impl FromStr for StanleyOrdering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "grevlex" => Ok(StanleyOrdering::Grevlex),
            "lex" => Ok(StanleyOrdering::Lex),
            _ => Err(Error::InvalidParameter(format!(
                "ordering must be grevlex or lex, got {s:?}"
            ))),
        }
    }
}

/// A family name plus textual parameters, as given on the command line.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
}

impl FamilySpec {
    pub fn new(name: impl Into<String>) -> Self {
        FamilySpec {
            name: name.into(),
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.params.insert(key.into(), value.into());
        self
    }

    fn allow_only(&self, keys: &[&str]) -> Result<()> {
        match self.params.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(Error::InvalidParameter(format!(
                "family {} takes no parameter {k:?}",
                self.name
            ))),
            None => Ok(()),
        }
    }

    fn n(&self, default: u32) -> Result<u32> {
        let Some(text) = self.params.get("n") else {
            return Ok(default);
        };
        let n: u32 = text
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("n must be an integer, got {text:?}")))?;
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::InvalidParameter(format!(
                "n must lie in 2..={MAX_N}, got {n}"
            )));
        }
        Ok(n)
    }

    fn s(&self) -> Result<Rational> {
        match self.params.get("s") {
            None => Ok(rat(0)),
            Some(text) => parse_rational(text),
        }
    }
}

/// Parses `p`, `-p`, `p/q` or `-p/q` with `q > 0`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidParameter(format!("not a rational number: {text:?}"));
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a, b),
        None => (t, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix('-').unwrap_or(num);
    if !digits(unsigned) || !digits(den) {
        return Err(bad());
    }
    let n = num.parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = den.parse().map_err(|_| bad())?;
    if d == 0.into() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// A catalog form with its variable names.
#[derive(Clone, Debug, PartialEq)]
pub struct Built {
    pub form: Form,
    pub variables: Vec<String>,
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn indexed(prefix: &str, range: impl Iterator<Item = u32>) -> Vec<String> {
    range.map(|i| format!("{prefix}{i}")).collect()
}

fn mono(arity: usize, powers: &[(usize, u32)]) -> Poly {
    let mut e = vec![0; arity];
    for &(i, p) in powers {
        e[i] += p;
    }
    Poly::monomial(Exponent::new(e), rat(1))
}

fn finish(poly: Poly, variables: Vec<String>) -> Result<Built> {
    Ok(Built {
        form: Form::new(poly)?,
        variables,
    })
}

/// `sum x_i^n - n(n-1) s prod x_i`.
pub fn fermat(n: u32, s: &Rational) -> Result<Built> {
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "fermat needs 2 <= n <= {MAX_N}, got {n}"
        )));
    }
    let k = n as usize;
    let variables = if k <= 4 {
        names(&["x", "y", "z", "w"][..k])
    } else {
        indexed("x", 1..=n)
    };
    let mut p = Poly::zero(k);
    for i in 0..k {
        p = &p + &mono(k, &[(i, n)]);
    }
    let all: Vec<(usize, u32)> = (0..k).map(|i| (i, 1)).collect();
    let c = s * rat(i64::from(n) * i64::from(n - 1));
    p = &p - &mono(k, &all).scale(&c);
    finish(p, variables)
}

/// `sum x_i M_i(u,v,w)` over the ten cubic monomials `M_i`.
pub fn stanley(ordering: StanleyOrdering) -> Result<Built> {
    let mut cubics = monomials_of_degree(3, 3);
    if ordering == StanleyOrdering::Lex {
        cubics.sort_by(|a, b| b.powers().cmp(a.powers()));
    }
    let mut p = Poly::zero(13);
    for (i, m) in cubics.iter().enumerate() {
        let pw = m.powers();
        p = &p + &mono(13, &[(0, pw[0]), (1, pw[1]), (2, pw[2]), (3 + i, 1)]);
    }
    let mut variables = names(&["u", "v", "w"]);
    variables.extend(indexed("x", 1..=10));
    finish(p, variables)
}

/// `sum_{j=0}^n x_j^2 u^(n-j) v^j`.
pub fn stacked_squares(n: u32) -> Result<Built> {
    if !(2..=MAX_N).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "stacked_squares needs 2 <= n <= {MAX_N}, got {n}"
        )));
    }
    let k = n as usize + 3;
    let mut p = Poly::zero(k);
    for j in 0..=n {
        p = &p + &mono(k, &[(0, n - j), (1, j), (2 + j as usize, 2)]);
    }
    let mut variables = names(&["u", "v"]);
    variables.extend(indexed("x", 0..=n));
    finish(p, variables)
}

/// `x^2u^3 + xyu^2v + y^2uv^2 + z^2v^3` in `(u,v,x,y,z)`.
pub fn quintic5() -> Result<Built> {
    let (u, v, x, y, z) = (0, 1, 2, 3, 4);
    let p = &(&(&mono(5, &[(x, 2), (u, 3)]) + &mono(5, &[(x, 1), (y, 1), (u, 2), (v, 1)]))
        + &mono(5, &[(y, 2), (u, 1), (v, 2)]))
        + &mono(5, &[(z, 2), (v, 3)]);
    finish(p, names(&["u", "v", "x", "y", "z"]))
}

/// `w^3xy + wx^3z + y^3z^2` in `(x,y,z,w)`.
pub fn ikeda() -> Result<Built> {
    let (x, y, z, w) = (0, 1, 2, 3);
    let p = &(&mono(4, &[(w, 3), (x, 1), (y, 1)]) + &mono(4, &[(w, 1), (x, 3), (z, 1)]))
        + &mono(4, &[(y, 3), (z, 2)]);
    finish(p, names(&["x", "y", "z", "w"]))
}

/// `(x-y)(x-z)(y-z)`.
pub fn s3_coinvariant() -> Result<Built> {
    let (x, y, z) = (Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2));
    finish(&(&(&x - &y) * &(&x - &z)) * &(&y - &z), names(&["x", "y", "z"]))
}

/// `x0 u^2 + x1 uv + x3 v^2` in `(x0,x1,x3,u,v)`.
pub fn wz_zero_hessian() -> Result<Built> {
    let (x0, x1, x3, u, v) = (0, 1, 2, 3, 4);
    let p = &(&mono(5, &[(x0, 1), (u, 2)]) + &mono(5, &[(x1, 1), (u, 1), (v, 1)]))
        + &mono(5, &[(x3, 1), (v, 2)]);
    finish(p, names(&["x0", "x1", "x3", "u", "v"]))
}

/// Builds the named family. Defaults: `n = 3`, `s = 0`, `ordering = grevlex`.
pub fn build(spec: &FamilySpec) -> Result<Built> {
    match spec.name.as_str() {
        "fermat" => {
            spec.allow_only(&["n", "s"])?;
            fermat(spec.n(3)?, &spec.s()?)
        }
        "stanley" => {
            spec.allow_only(&["ordering"])?;
            let ordering = match spec.params.get("ordering") {
                Some(o) => o.parse()?,
                None => StanleyOrdering::Grevlex,
            };
            stanley(ordering)
        }
        "stacked_squares" => {
            spec.allow_only(&["n"])?;
            stacked_squares(spec.n(3)?)
        }
        "quintic5" => {
            spec.allow_only(&[])?;
            quintic5()
        }
        "ikeda" => {
            spec.allow_only(&[])?;
            ikeda()
        }
        "s3_coinvariant" => {
            spec.allow_only(&[])?;
            s3_coinvariant()
        }
        "wz_zero_hessian" => {
            spec.allow_only(&[])?;
            wz_zero_hessian()
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apolar::hilbert_function;
    use crate::poly::ratio;

    fn text(b: &Built) -> String {
        b.form.poly().to_text(&b.variables)
    }

    #[test]
    fn documented_examples() {
        assert_eq!(text(&fermat(3, &rat(1)).unwrap()), "x^3+y^3-6*x*y*z+z^3");
        assert_eq!(
            text(&s3_coinvariant().unwrap()),
            "x^2*y-x*y^2-x^2*z+y^2*z+x*z^2-y*z^2"
        );
        let ss = stacked_squares(3).unwrap();
        assert_eq!(ss.variables, ["u", "v", "x0", "x1", "x2", "x3"]);
        assert_eq!(ss.form.poly().num_terms(), 4);
        assert_eq!(
            ss.form.poly().coefficient(&Exponent::new(vec![2, 1, 0, 2, 0, 0])),
            rat(1)
        );
    }

    #[test]
    fn degrees() {
        let cases = [
            (fermat(5, &ratio(1, 2)).unwrap(), 5),
            (stanley(StanleyOrdering::Grevlex).unwrap(), 4),
            (stacked_squares(4).unwrap(), 6),
            (quintic5().unwrap(), 5),
            (ikeda().unwrap(), 5),
            (s3_coinvariant().unwrap(), 3),
            (wz_zero_hessian().unwrap(), 3),
        ];
        for (b, d) in cases {
            assert_eq!(b.form.degree(), d);
            assert_eq!(b.variables.len(), b.form.arity());
        }
    }

    #[test]
    fn stanley_orderings_share_hilbert_function() {
        let a = stanley(StanleyOrdering::Grevlex).unwrap();
        let b = stanley(StanleyOrdering::Lex).unwrap();
        assert_ne!(a.form, b.form);
        let h = hilbert_function(&a.form).unwrap();
        assert_eq!(h.dims, vec![1, 13, 12, 13, 1]);
        assert_eq!(hilbert_function(&b.form).unwrap(), h);
    }

    #[test]
    fn spec_parsing() {
        let b = build(&FamilySpec::new("fermat").with("n", "4").with("s", "-1/2")).unwrap();
        assert_eq!(b.variables, ["x", "y", "z", "w"]);
        assert_eq!(
            b.form.poly().coefficient(&Exponent::new(vec![1, 1, 1, 1])),
            rat(6)
        );
        assert!(matches!(
            build(&FamilySpec::new("fermat").with("n", "1")),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            build(&FamilySpec::new("ikeda").with("n", "3")),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            build(&FamilySpec::new("stanley").with("ordering", "revlex")),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            build(&FamilySpec::new("nope")),
            Err(Error::UnknownFamily(_))
        ));
        assert_eq!(build(&FamilySpec::new("fermat").with("n", "6")).unwrap().variables[5], "x6");
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        for bad in ["", "1/0", "1/-2", "a", "+1", "1.5", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }
}
