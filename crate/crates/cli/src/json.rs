//! Minimal JSON writer with stable key order and fixed float formatting.

use crate::fmt::sig12;

/// A JSON value. Objects keep their insertion order, floats render through
/// [`sig12`], so identical values always serialize to identical bytes.
#[derive(Debug, Clone)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(String, Json)>),
}

impl Json {
    pub fn obj(pairs: Vec<(&str, Json)>) -> Json {
        Json::Obj(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    /// A float field that may legitimately be non-finite (e.g. an unclamped
    /// raw statistic): finite values stay numbers, the rest become strings.
    pub fn float_or_token(value: f64) -> Json {
        if value.is_finite() {
            Json::Float(value)
        } else {
            Json::Str(sig12(value))
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => out.push_str(&i.to_string()),
            Json::Float(f) => {
                debug_assert!(f.is_finite(), "non-finite float in JSON: {f}");
                out.push_str(&sig12(*f));
            }
            Json::Str(s) => write_escaped(out, s),
            Json::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    newline_indent(out, indent + 1);
                    item.write(out, indent + 1);
                }
                newline_indent(out, indent);
                out.push(']');
            }
            Json::Obj(pairs) => {
                if pairs.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (i, (key, value)) in pairs.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    newline_indent(out, indent + 1);
                    write_escaped(out, key);
                    out.push_str(": ");
                    value.write(out, indent + 1);
                }
                newline_indent(out, indent);
                out.push('}');
            }
        }
    }
}

fn newline_indent(out: &mut String, indent: usize) {
    out.push('\n');
    for _ in 0..indent {
        out.push_str("  ");
    }
}

fn write_escaped(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_nested_object() {
        let doc = Json::obj(vec![
            ("name", Json::Str("exp".into())),
            ("r_squared", Json::Float(0.0132)),
            ("n", Json::Int(66)),
            ("flags", Json::Arr(vec![Json::Bool(true), Json::Null])),
        ]);
        let text = doc.render();
        assert!(text.contains("\"r_squared\": 0.0132"));
        assert!(text.contains("\"n\": 66"));
        assert!(text.ends_with("}\n"));
    }

    #[test]
    fn escapes_strings() {
        let doc = Json::Str("a\"b\\c\nd".into());
        assert_eq!(doc.render(), "\"a\\\"b\\\\c\\nd\"\n");
    }

    #[test]
    fn identical_values_identical_bytes() {
        let a = Json::obj(vec![("x", Json::Float(1.0 / 3.0))]).render();
        let b = Json::obj(vec![("x", Json::Float(1.0 / 3.0))]).render();
        assert_eq!(a, b);
    }
}
