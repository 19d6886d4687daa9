//! Fixed-format CSV: comma separated, dot decimal, 12 significant digits.

use std::fmt::Write;

/// Formats a float with 12 significant digits in scientific notation.
pub fn number(x: f64) -> String {
    // -0.0 would otherwise print with a sign
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

pub fn optional(x: Option<f64>) -> String {
    x.map(number).unwrap_or_default()
}

/// Accumulates rows under a fixed header.
pub struct Table {
    columns: usize,
    text: String,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        let mut text = header.join(",");
        text.push('\n');
        Table {
            columns: header.len(),
            text,
        }
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut count = 0;
        for (i, cell) in cells.into_iter().enumerate() {
            if i > 0 {
                self.text.push(',');
            }
            let _ = write!(self.text, "{}", cell.as_ref());
            count += 1;
        }
        debug_assert_eq!(count, self.columns, "row width differs from header");
        self.text.push('\n');
    }

    pub fn finish(self) -> String {
        self.text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(number(1.0), "1.00000000000e0");
        assert_eq!(number(-0.0), "0.00000000000e0");
        assert_eq!(number(0.04), "4.00000000000e-2");
        assert_eq!(number(-123456.789), "-1.23456789000e5");
        let back: f64 = number(std::f64::consts::PI).parse().unwrap();
        assert!((back - std::f64::consts::PI).abs() < 5e-12);
    }

    #[test]
    fn table_layout() {
        let mut t = Table::new(&["a", "b"]);
        t.row([number(1.0), optional(None)]);
        assert_eq!(t.finish(), "a,b\n1.00000000000e0,\n");
    }
}
