use std::fmt::Write;

/// CSV text with `#` comment lines before the column header.
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(comments: &[&str], columns: &[&str]) -> Csv {
        let mut text = String::new();
        for c in comments {
            writeln!(text, "# {c}").unwrap();
        }
        writeln!(text, "{}", columns.join(",")).unwrap();
        Csv { text }
    }

    pub fn row(&mut self, cells: &[String]) {
        writeln!(self.text, "{}", cells.join(",")).unwrap();
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

/// Round-trippable float formatting used in every CSV.
pub fn num(x: f64) -> String {
    format!("{x:.17e}")
}

pub fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "none".to_string(), num)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_precede_the_header() {
        let mut c = Csv::new(&["first", "second"], &["a", "b"]);
        c.row(&[num(0.5), opt(None)]);
        assert_eq!(c.into_string(), "# first\n# second\na,b\n5.00000000000000000e-1,none\n");
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, 1.0 / 3.0, 6.02e23, -2.5e-300] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
    }
}
