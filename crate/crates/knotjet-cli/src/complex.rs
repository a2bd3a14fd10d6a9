//! Complex literals for `--u`: sums and products of reals, `i` and `pi`,
//! e.g. `i*pi`, `2*pi*i/3`, `0.1 - 2.5i`.

use num_complex::Complex64;
use std::f64::consts::PI;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Complex64, String> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == b'+' { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Complex64, String> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc *= self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc /= self.factor()?;
                }
                // juxtaposition: `2i`, `2pi`, `ipi`
                Some(b'i' | b'p' | b'(') => acc *= self.factor()?,
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Complex64, String> {
        let rest = &self.s[self.pos..];
        if rest.starts_with(b"pi") {
            self.pos += 2;
            return Ok(Complex64::new(PI, 0.0));
        }
        match self.peek() {
            Some(b'i') => {
                self.pos += 1;
                Ok(Complex64::new(0.0, 1.0))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err("unbalanced parenthesis".into());
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    let exp_sign =
                        (c == b'+' || c == b'-') && matches!(self.s[self.pos - 1], b'e' | b'E');
                    if c.is_ascii_digit() || c == b'.' || c == b'e' || c == b'E' || exp_sign {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                text.parse::<f64>()
                    .map(|x| Complex64::new(x, 0.0))
                    .map_err(|_| format!("bad number {text:?}"))
            }
            Some(c) => Err(format!("unexpected {:?}", c as char)),
            None => Err("unexpected end of input".into()),
        }
    }
}

pub fn parse(text: &str) -> Result<Complex64, String> {
    let compact: String = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect::<String>()
        .to_ascii_lowercase();
    let mut p = Parser {
        s: compact.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    if p.pos != p.s.len() {
        return Err(format!("trailing input at {}", p.pos));
    }
    if !v.is_finite() {
        return Err("not finite".into());
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, re: f64, im: f64) -> bool {
        (a - Complex64::new(re, im)).norm() < 1e-15
    }

    #[test]
    fn literals() {
        assert!(close(parse("i*pi").unwrap(), 0.0, PI));
        assert!(close(parse("ipi").unwrap(), 0.0, PI));
        assert!(close(parse("2*pi*i/3").unwrap(), 0.0, 2.0 * PI / 3.0));
        assert!(close(parse("0.1 - 2.5i").unwrap(), 0.1, -2.5));
        assert!(close(parse("-1e-2+(1+i)*2").unwrap(), 1.99, 2.0));
        assert!(parse("1+").is_err());
        assert!(parse("x").is_err());
        assert!(parse("1/0").is_err());
    }
}
