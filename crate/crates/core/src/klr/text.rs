//! Text form `c * x^(a1,..,am) * tau[s2 s1] * e(i1 i2 ...)`, terms joined by ` + ` / ` - `.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{KlrAlgebra, KlrElement, MPoly};
use crate::{Error, Result};

impl KlrAlgebra {
    pub fn format(&self, u: &KlrElement) -> String {
        if u.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (t, c)) in u.terms().enumerate() {
            let shown = if n == 0 {
                c.to_string()
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
                c.abs().to_string()
            };
            let exps: Vec<String> = t.exps.iter().map(|e| e.to_string()).collect();
            let word: Vec<String> = t.word.iter().map(|l| format!("s{}", l + 1)).collect();
            let idem: Vec<&str> = t.idem.iter().map(|&i| self.quiver.label(i)).collect();
            out.push_str(&format!(
                "{shown} * x^({}) * tau[{}] * e({})",
                exps.join(","),
                word.join(" "),
                idem.join(" ")
            ));
        }
        out
    }

    /// Parses the text form. Words need not be reduced; the result is straightened.
    pub fn parse(&self, s: &str) -> Result<KlrElement> {
        let s = s.trim();
        if s == "0" {
            return Ok(KlrElement::zero());
        }
        let mut out = KlrElement::zero();
        let normalized = s.replace(" - ", " + -");
        for chunk in normalized.split(" + ") {
            let parts: Vec<&str> = chunk.split(" * ").map(str::trim).collect();
            let [c, x, tau, e] = parts.as_slice() else {
                return Err(Error::Parse(format!("expected 4 factors in `{chunk}`")));
            };
            let c: BigInt = c.parse().map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?;
            let exps: Vec<u16> = inner(x, "x^(", ")")?
                .split(',')
                .filter(|p| !p.trim().is_empty())
                .map(|p| p.trim().parse().map_err(|_| Error::Parse(format!("bad exponent `{p}`"))))
                .collect::<Result<_>>()?;
            let word: Vec<u8> = inner(tau, "tau[", "]")?
                .split_whitespace()
                .map(|w| {
                    w.strip_prefix('s')
                        .and_then(|n| n.parse::<u8>().ok())
                        .filter(|&n| n >= 1 && (n as usize) < self.m)
                        .map(|n| n - 1)
                        .ok_or_else(|| Error::Parse(format!("bad letter `{w}`")))
                })
                .collect::<Result<_>>()?;
            let idem: Vec<usize> = inner(e, "e(", ")")?
                .split_whitespace()
                .map(|l| self.quiver.index(l))
                .collect::<Result<_>>()?;
            if exps.len() != self.m {
                return Err(Error::Parse(format!("expected {} exponents", self.m)));
            }
            self.check_seq(&idem)?;
            if c.is_zero() {
                continue;
            }
            let reduced = self.reduce_word(&idem, &word, 0)?;
            out.add_assign(&self.poly_times(&MPoly::monomial(exps, c), &reduced));
        }
        Ok(out)
    }
}

fn inner<'a>(s: &'a str, open: &str, close: &str) -> Result<&'a str> {
    s.strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| Error::Parse(format!("expected `{open}...{close}`, found `{s}`")))
}
