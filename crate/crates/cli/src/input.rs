use std::fs;

use serde::de::DeserializeOwned;
use serde_json::Value;
use serde_path_to_error::{Path, Segment};

use seamtqft::cobordism::{Cobordism, Meom, Word};
use seamtqft::surface::ClosedSeamedSurface;

use crate::Failure;

fn pointer(path: &Path) -> String {
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

pub fn read_value(file: &str) -> Result<Value, Failure> {
    let text = fs::read_to_string(file).map_err(|e| Failure::Input(format!("{file}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{file}: invalid JSON: {e}")))
}

pub fn decode<T: DeserializeOwned>(file: &str, v: Value) -> Result<T, Failure> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let at = pointer(e.path());
        let at = if at.is_empty() { "/".to_string() } else { at };
        Failure::Input(format!("{file}: schema error at {at}: {}", e.inner()))
    })
}

pub fn read<T: DeserializeOwned>(file: &str) -> Result<T, Failure> {
    decode(file, read_value(file)?)
}

/// A closed surface given either as facets and seams or as a generator
/// word from ∅ to ∅.
pub fn read_surface(file: &str) -> Result<ClosedSeamedSurface, Failure> {
    let v = read_value(file)?;
    let is_word = v.get("word").is_some();
    if is_word {
        let w: Word = decode(file, v)?;
        let cob = build(file, &w)?;
        cob.close().map_err(|e| Failure::Input(format!("{file}: {e}")))
    } else if v.get("facets").is_some() {
        decode(file, v)
    } else {
        Err(Failure::Input(format!("{file}: schema error at /: expected a \"facets\" or a \"word\" field")))
    }
}

pub fn build(file: &str, w: &Word) -> Result<Cobordism, Failure> {
    w.build().map_err(|e| Failure::Input(format!("{file}: {e}")))
}

pub fn read_word(file: &str) -> Result<Cobordism, Failure> {
    build(file, &read::<Word>(file)?)
}

pub fn read_words(file: &str) -> Result<Vec<Cobordism>, Failure> {
    let words: Vec<Word> = read(file)?;
    words
        .iter()
        .enumerate()
        .map(|(i, w)| w.build().map_err(|e| Failure::Input(format!("{file}: /{i}: {e}"))))
        .collect()
}

pub fn read_meom(file: &str) -> Result<Meom, Failure> {
    let m: Meom = read(file)?;
    m.validate().map_err(|e| Failure::Input(format!("{file}: {e}")))?;
    Ok(m)
}
