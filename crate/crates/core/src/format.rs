//! Group interchange format: a JSON document
//! `{"degree": n, "generators": [[images...], ...]}` with 0-based images.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupDoc {
    degree: usize,
    generators: Vec<Vec<u64>>,
}

pub fn parse_group(text: &str) -> Result<PermGroup> {
    let doc: GroupDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let semantic = |message: String| {
        let (line, column) = locate(text, "generators");
        Error::Parse {
            line,
            column,
            message,
        }
    };
    if doc.degree == 0 {
        return Err(semantic("degree must be at least 1".into()));
    }
    let mut gens = Vec::with_capacity(doc.generators.len());
    for (i, g) in doc.generators.iter().enumerate() {
        if g.len() != doc.degree {
            return Err(semantic(format!(
                "generator {i} has {} images, expected {}",
                g.len(),
                doc.degree
            )));
        }
        let p = Permutation::from_images(g.iter().copied())
            .map_err(|e| semantic(format!("generator {i}: {e}")))?;
        gens.push(p);
    }
    PermGroup::new(doc.degree, gens)
}

/// 1-based position of the first occurrence of `key`, or the document start.
fn locate(text: &str, key: &str) -> (usize, usize) {
    let Some(offset) = text.find(key) else {
        return (1, 1);
    };
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

/// Compact single-line document; generators are emitted as stored.
pub fn emit_group(g: &PermGroup) -> String {
    let doc = GroupDoc {
        degree: g.degree(),
        generators: g
            .generators()
            .iter()
            .map(|p| p.images().iter().map(|&x| x as u64).collect())
            .collect(),
    };
    serde_json::to_string(&doc).expect("group documents serialize")
}
