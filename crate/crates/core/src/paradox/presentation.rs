use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::groups::{GroupDescriptor, GroupElement};

/// A word in named generators: `(generator, exponent)` letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<(String, i64)>);

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(g, k)| if *k == 1 { g.clone() } else { format!("{g}^{k}") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Parses letters separated by spaces or `*`, each a generator name with an
/// optional exponent: `a b a^-1 b`, `x^3 * y⁻¹`. `1` is the empty word.
pub fn parse_word(text: &str) -> Result<Word> {
    let mut letters = Vec::new();
    for token in text.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
        if token == "1" {
            continue;
        }
        let (name, exp) = if let Some(name) = token.strip_suffix("⁻¹") {
            (name, -1)
        } else if let Some((name, exp)) = token.split_once('^') {
            let k: i64 = exp
                .trim_start_matches('(')
                .trim_end_matches(')')
                .parse()
                .map_err(|_| Error::UnknownGenerator(format!("bad exponent in {token:?}")))?;
            (name, k)
        } else {
            (token, 1)
        };
        if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(Error::UnknownGenerator(format!("bad letter {token:?}")));
        }
        letters.push((name.to_string(), exp));
    }
    Ok(Word(letters))
}

pub fn evaluate_word(
    group: &GroupDescriptor,
    word: &Word,
    images: &BTreeMap<String, GroupElement>,
) -> Result<GroupElement> {
    let mut acc = group.identity();
    for (name, k) in &word.0 {
        let x = images
            .get(name)
            .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
        acc = group.mul(&acc, &group.pow(x, *k)?)?;
    }
    Ok(acc)
}

/// Whether every relator evaluates to the identity under `images`.
pub fn validate_presentation_rep(
    group: &GroupDescriptor,
    relators: &[Word],
    images: &BTreeMap<String, GroupElement>,
) -> Result<bool> {
    for x in images.values() {
        group.check(x)?;
    }
    for r in relators {
        if !group.is_identity(&evaluate_word(group, r, images)?) {
            return Ok(false);
        }
    }
    Ok(true)
}
