//! Text and JSON forms of GW elements.
//!
//! Text: a signed sum of terms `k⟨a, b, …⟩` (the multiplier `k` is
//! optional), e.g. `<2,3> - <1>` or `−2⟨−1⟩`; `0` is the zero element.
//! ASCII `<>`/`-` and Unicode `⟨⟩`/`−` are both accepted.

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::{Field, GwElement, LaurentClass, SquareClass};
use crate::poly::{parse, parse_rational_function};
use crate::{Error, Result};

/// Bracket and minus-sign style for text output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Notation {
    #[default]
    Unicode,
    Ascii,
}

impl Notation {
    fn open(self) -> &'static str {
        match self {
            Notation::Unicode => "⟨",
            Notation::Ascii => "<",
        }
    }

    fn close(self) -> &'static str {
        match self {
            Notation::Unicode => "⟩",
            Notation::Ascii => ">",
        }
    }

    fn minus(self) -> &'static str {
        match self {
            Notation::Unicode => "\u{2212}",
            Notation::Ascii => "-",
        }
    }
}

fn group(v: &[SquareClass]) -> Vec<(&SquareClass, usize)> {
    let mut out: Vec<(&SquareClass, usize)> = Vec::new();
    for c in v {
        match out.last_mut() {
            Some((last, k)) if *last == c => *k += 1,
            _ => out.push((c, 1)),
        }
    }
    out
}

impl GwElement {
    pub fn to_text(&self, notation: Notation) -> String {
        if self.is_formally_zero() {
            return "0".into();
        }
        let unicode = notation == Notation::Unicode;
        let mut s = String::new();
        let terms = group(self.positive())
            .into_iter()
            .map(|t| (false, t))
            .chain(group(self.negative()).into_iter().map(|t| (true, t)));
        for (i, (negative, (c, k))) in terms.enumerate() {
            match (i, negative) {
                (0, true) => s.push_str(notation.minus()),
                (0, false) => {}
                (_, true) => s.push_str(&format!(" {} ", notation.minus())),
                (_, false) => s.push_str(" + "),
            }
            if k > 1 {
                s.push_str(&k.to_string());
            }
            s.push_str(notation.open());
            s.push_str(&c.entry(unicode));
            s.push_str(notation.close());
        }
        s
    }

    /// Parses the text form over `field`.
    pub fn parse(src: &str, field: Field) -> Result<GwElement> {
        match parse_terms(src, |e| parse_entry(e, field))? {
            Some((pos, neg)) => GwElement::new(field, pos, neg),
            None => Ok(GwElement::zero(field)),
        }
    }

    pub fn to_json(&self) -> Value {
        let entry = |c: &SquareClass| -> Value {
            match c {
                SquareClass::Rational(a) => match a.to_i64() {
                    Some(v) => json!(v),
                    None => json!(a.to_string()),
                },
                SquareClass::Finite { rep, .. } => json!(rep),
                SquareClass::Laurent(_) => json!(c.entry(false)),
            }
        };
        json!({
            "pos": self.positive().iter().map(entry).collect::<Vec<_>>(),
            "neg": self.negative().iter().map(entry).collect::<Vec<_>>(),
            "field": self.field().to_string(),
        })
    }

    /// Reads `{"pos": [...], "neg": [...], "field": ...}`; entries may be
    /// numbers or strings, the field defaults to ℚ.
    pub fn from_json(v: &Value) -> Result<GwElement> {
        let obj = v.as_object().ok_or_else(|| Error::InvalidInput("GW element must be a JSON object".into()))?;
        let field = match obj.get("field") {
            None => Field::Rationals,
            Some(Value::String(s)) => s.parse()?,
            Some(_) => return Err(Error::InvalidInput("`field` must be a string".into())),
        };
        let side = |key: &str| -> Result<Vec<SquareClass>> {
            match obj.get(key) {
                None => Ok(Vec::new()),
                Some(Value::Array(items)) => items
                    .iter()
                    .map(|x| match x {
                        Value::Number(n) => parse_entry(&n.to_string(), field),
                        Value::String(s) => parse_entry(s, field),
                        _ => Err(Error::InvalidInput(format!("`{key}` entries must be numbers or strings"))),
                    })
                    .collect(),
                Some(_) => Err(Error::InvalidInput(format!("`{key}` must be an array"))),
            }
        };
        GwElement::new(field, side("pos")?, side("neg")?)
    }
}

/// Splits the text form into positive and negative entries read by
/// `entry`; `None` for the literal `0`.
pub(crate) fn parse_terms<T: Clone>(src: &str, entry: impl Fn(&str) -> Result<T>) -> Result<Option<(Vec<T>, Vec<T>)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].1.is_whitespace() {
            *i += 1;
        }
    };
    let at = |i: usize| chars.get(i).map_or(src.len(), |c| c.0);
    skip_ws(&mut i);
    if i < chars.len() && chars[i].1 == '0' {
        let mut j = i + 1;
        skip_ws(&mut j);
        if j == chars.len() {
            return Ok(None);
        }
    }
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    let mut first = true;
    loop {
        skip_ws(&mut i);
        if i == chars.len() {
            if first {
                return Err(Error::Syntax { pos: at(i), msg: "empty form".into() });
            }
            break;
        }
        let mut negative = false;
        match chars[i].1 {
            '+' => i += 1,
            '-' | '\u{2212}' => {
                negative = true;
                i += 1;
            }
            _ if first => {}
            c => return Err(Error::Syntax { pos: at(i), msg: format!("expected `+` or `-`, found `{c}`") }),
        }
        first = false;
        skip_ws(&mut i);
        let start = i;
        while i < chars.len() && chars[i].1.is_ascii_digit() {
            i += 1;
        }
        let mult: usize = if i > start {
            let digits: String = chars[start..i].iter().map(|c| c.1).collect();
            digits.parse().map_err(|_| Error::Syntax { pos: at(start), msg: "multiplier too large".into() })?
        } else {
            1
        };
        skip_ws(&mut i);
        match chars.get(i).map(|c| c.1) {
            Some('<') | Some('⟨') => i += 1,
            _ => return Err(Error::Syntax { pos: at(i), msg: "expected `<`".into() }),
        }
        let body_start = i;
        while i < chars.len() && !matches!(chars[i].1, '>' | '⟩') {
            i += 1;
        }
        if i == chars.len() {
            return Err(Error::Syntax { pos: at(i), msg: "missing `>`".into() });
        }
        let body_end = i;
        i += 1;
        let mut entry_start = body_start;
        let mut items = Vec::new();
        for k in body_start..=body_end {
            if k == body_end || chars[k].1 == ',' {
                let a = at(entry_start);
                let b = at(k);
                items.push(entry(&src[a..b]).map_err(|e| offset(e, a))?);
                entry_start = k + 1;
            }
        }
        let target = if negative { &mut neg } else { &mut pos };
        for _ in 0..mult {
            target.extend(items.iter().cloned());
        }
    }
    Ok(Some((pos, neg)))
}

fn offset(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + by, msg },
        Error::UnknownVariable { name, pos } => Error::UnknownVariable { name, pos: pos + by },
        other => other,
    }
}

/// One representative: a rational constant expression over ℚ or 𝔽_p, a
/// rational function of `t` over ℚ(t).
pub(crate) fn parse_entry(src: &str, field: Field) -> Result<SquareClass> {
    let leading = src.len() - src.trim_start().len();
    let normalized = src.replace('\u{2212}', "-");
    if normalized.trim().is_empty() {
        return Err(Error::Syntax { pos: leading, msg: "empty entry".into() });
    }
    match field {
        Field::RationalFunctions => {
            let (n, d) = parse_rational_function(&normalized, "t")?;
            if n.is_zero() {
                return Err(Error::ZeroClass);
            }
            Ok(SquareClass::Laurent(LaurentClass::from_fraction(&n, &d)?))
        }
        _ => {
            let p = parse(&normalized, &[])?;
            let c = p.constant_term();
            if c.is_zero() {
                return Err(Error::ZeroClass);
            }
            SquareClass::from_rational_in(field, &c)
        }
    }
}

impl fmt::Display for GwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(Notation::Unicode))
    }
}

impl Serialize for GwElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GwElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        GwElement::from_json(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let e = GwElement::from_ints(&[1, 1, -1], &[-2]);
        assert_eq!(e.to_text(Notation::Unicode), "2⟨1⟩ + ⟨−1⟩ − ⟨−2⟩");
        assert_eq!(e.to_text(Notation::Ascii), "2<1> + <-1> - <-2>");
        for n in [Notation::Unicode, Notation::Ascii] {
            assert_eq!(GwElement::parse(&e.to_text(n), Field::Rationals).unwrap(), e);
        }
        assert_eq!(GwElement::parse("<2,3> - <1>", Field::Rationals).unwrap(), GwElement::from_ints(&[2, 3], &[1]));
        assert_eq!(GwElement::parse("−⟨−1⟩", Field::Rationals).unwrap(), GwElement::from_ints(&[], &[-1]));
        assert_eq!(GwElement::parse("<1/4, 18>", Field::Rationals).unwrap(), GwElement::from_ints(&[1, 2], &[]));
        assert!(GwElement::parse(" 0 ", Field::Rationals).unwrap().is_formally_zero());
        assert_eq!(GwElement::zero(Field::Rationals).to_text(Notation::Ascii), "0");
    }

    #[test]
    fn text_errors() {
        assert!(matches!(GwElement::parse("<1", Field::Rationals), Err(Error::Syntax { .. })));
        assert!(matches!(GwElement::parse("<0>", Field::Rationals), Err(Error::ZeroClass)));
        assert!(matches!(GwElement::parse("<1> <2>", Field::Rationals), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(GwElement::parse("<1,x>", Field::Rationals), Err(Error::UnknownVariable { pos: 3, .. })));
        assert!(matches!(GwElement::parse("", Field::Rationals), Err(Error::Syntax { .. })));
    }

    #[test]
    fn other_fields() {
        let e = GwElement::parse("<3*t^2, t> - <t+1>", Field::RationalFunctions).unwrap();
        assert_eq!(e.to_text(Notation::Ascii), "<3> + <t> - <t + 1>");
        let f = GwElement::parse("<2,3,-1>", Field::Fp(7)).unwrap();
        assert_eq!(f.to_text(Notation::Ascii), "<1> + 2<3>");
    }

    #[test]
    fn json_round_trip() {
        let e = GwElement::from_ints(&[2], &[1, -2]);
        let v = e.to_json();
        assert_eq!(v, json!({"pos": [2], "neg": [1, -2], "field": "Q"}));
        assert_eq!(GwElement::from_json(&v).unwrap(), e);
        let big = GwElement::parse("<100000000000000000003>", Field::Rationals).unwrap();
        assert_eq!(GwElement::from_json(&big.to_json()).unwrap(), big);
        let t = GwElement::parse("<t - 2>", Field::RationalFunctions).unwrap();
        assert_eq!(GwElement::from_json(&t.to_json()).unwrap(), t);
        let s = serde_json::to_string(&e).unwrap();
        let back: GwElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        assert!(GwElement::from_json(&json!({"pos": [0]})).is_err());
    }
}
