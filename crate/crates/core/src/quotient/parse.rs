//! Text form `[[a,b,c],[d,e,f],[g,h,i]]`, optionally prefixed by `diag(x,y,z)*`.

use num_bigint::BigInt;

use crate::error::Error;
use crate::linalg::Matrix;
use crate::IntMatrix;

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            chars: text.chars().enumerate().collect(),
            pos: 0,
            text,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), Error> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.err(format!("expected '{c}', found '{x}'"))),
            None => Err(self.err(format!("expected '{c}', found end of input"))),
        }
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        let mut s = String::new();
        if let Some(&(_, c)) = self.chars.get(self.pos) {
            // accept the typographic minus as well
            if c == '-' || c == '\u{2212}' {
                s.push('-');
                self.pos += 1;
            } else if c == '+' {
                self.pos += 1;
            }
        }
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            s.push(c);
            self.pos += 1;
        }
        if s.is_empty() || s == "-" {
            self.pos = start;
            return Err(self.err("expected an integer"));
        }
        Ok(s.parse().unwrap())
    }

    fn list<T>(&mut self, open: char, close: char, mut item: impl FnMut(&mut Self) -> Result<T, Error>) -> Result<Vec<T>, Error> {
        self.expect(open)?;
        let mut out = vec![item(self)?];
        loop {
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    out.push(item(self)?);
                }
                Some(c) if c == close => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err(format!("expected ',' or '{close}'"))),
            }
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        let rest: String = self.text.chars().skip(self.pos).take(word.len()).collect();
        if rest == word {
            self.pos += word.chars().count();
            true
        } else {
            false
        }
    }
}

/// Parses a square or rectangular integer matrix, applying a `diag(...)*` prefix if present.
pub fn parse_int_matrix(text: &str) -> Result<IntMatrix, Error> {
    let mut c = Cursor::new(text);
    let diag = if c.keyword("diag") {
        let d = c.list('(', ')', Cursor::integer)?;
        c.expect('*')?;
        Some(d)
    } else {
        None
    };
    let rows = c.list('[', ']', |c| c.list('[', ']', Cursor::integer))?;
    if c.peek().is_some() {
        return Err(c.err("trailing input"));
    }
    let cols = rows[0].len();
    if let Some(i) = rows.iter().position(|r| r.len() != cols) {
        return Err(Error::Parse {
            position: 0,
            message: format!("row {i} has {} entries, expected {cols}", rows[i].len()),
        });
    }
    let mut m = Matrix::from_rows(rows, cols);
    if let Some(d) = diag {
        if d.len() != m.rows() {
            return Err(Error::Parse {
                position: 0,
                message: format!("diag has {} entries for {} rows", d.len(), m.rows()),
            });
        }
        for (i, x) in d.iter().enumerate() {
            m.scale_row(i, x);
        }
    }
    Ok(m)
}

/// [`parse_int_matrix`] restricted to 3x3 input.
pub fn parse_kernel_matrix(text: &str) -> Result<IntMatrix, Error> {
    let m = parse_int_matrix(text)?;
    if m.rows() != 3 || m.cols() != 3 {
        return Err(Error::Parse {
            position: 0,
            message: format!("expected a 3x3 matrix, got {}x{}", m.rows(), m.cols()),
        });
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_and_prefixed() {
        let m = parse_kernel_matrix("[[1, 1, 0], [3,0,3],[0,0,4]]").unwrap();
        assert_eq!(m, Matrix::from_i64_rows(&[&[1, 1, 0], &[3, 0, 3], &[0, 0, 4]]));
        let m = parse_kernel_matrix("diag(2,9,9)*[[−4,2,1],[-3,1,0],[1,0,1]]").unwrap();
        assert_eq!(m, Matrix::from_i64_rows(&[&[-8, 4, 2], &[-27, 9, 0], &[9, 0, 9]]));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_kernel_matrix("[[1,2,3],[4,5,x],[7,8,9]]") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 14),
            other => panic!("{other:?}"),
        }
        assert!(parse_kernel_matrix("[[1,2],[3,4]]").is_err());
        assert!(parse_kernel_matrix("[[1,2,3],[4,5,6],[7,8,9]] extra").is_err());
    }
}
