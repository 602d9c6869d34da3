//! Parsing of the `--q` flag: `symbolic`, `rat:a/b`, `root:p`, or `int:k`.

use descent_core::scalars::{rational_from_str, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum QMode {
    Symbolic,
    Rational(Rational),
    /// `q = ζ_p`, a primitive p-th root of unity.
    Root(usize),
    Int(i64),
}

impl QMode {
    pub fn parse(s: &str) -> Result<QMode, String> {
        if s == "symbolic" {
            return Ok(QMode::Symbolic);
        }
        if let Some(v) = s.strip_prefix("rat:") {
            return rational_from_str(v)
                .map(QMode::Rational)
                .ok_or_else(|| format!("cannot parse rational '{v}' (expected a or a/b, b != 0)"));
        }
        if let Some(v) = s.strip_prefix("root:") {
            let p: usize = v
                .parse()
                .map_err(|_| format!("cannot parse root order '{v}'"))?;
            if p < 1 {
                return Err("root order must satisfy p >= 1".into());
            }
            return Ok(QMode::Root(p));
        }
        if let Some(v) = s.strip_prefix("int:") {
            let k: i64 = v
                .parse()
                .map_err(|_| format!("cannot parse integer '{v}'"))?;
            return Ok(QMode::Int(k));
        }
        Err(format!(
            "unknown q mode '{s}' (expected symbolic, rat:a/b, root:p or int:k)"
        ))
    }

    /// The flag spelling, echoed into output metadata.
    pub fn describe(&self) -> String {
        match self {
            QMode::Symbolic => "symbolic".into(),
            QMode::Rational(r) => format!("rat:{}", descent_core::scalars::rational_to_string(r)),
            QMode::Root(p) => format!("root:{p}"),
            QMode::Int(k) => format!("int:{k}"),
        }
    }

    /// The rational value of a numeric mode.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            QMode::Rational(r) => Some(r.clone()),
            QMode::Int(k) => Some(Rational::from_integer((*k).into())),
            _ => None,
        }
    }
}
