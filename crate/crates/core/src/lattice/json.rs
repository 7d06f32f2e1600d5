//! Lattice JSON: `{format_version, elements, leq, ortho, zero, one}` with
//! elements referenced by label. `leq` lists every pair `[x, y]` with
//! `x <= y`; `ortho` lists `[x, x']` for every element and may be omitted for
//! plain lattices.

use serde::{Deserialize, Serialize};

use super::{Lattice, OrthoLattice};
use crate::error::{Error, Result};
use crate::FORMAT_VERSION;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub format_version: u32,
    pub elements: Vec<String>,
    pub leq: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ortho: Option<Vec<[String; 2]>>,
    pub zero: String,
    pub one: String,
}

impl LatticeJson {
    pub fn from_lattice(l: &Lattice) -> Self {
        let mut leq = Vec::new();
        for x in 0..l.len() {
            for y in 0..l.len() {
                if l.leq(x, y) {
                    leq.push([l.label(x).to_string(), l.label(y).to_string()]);
                }
            }
        }
        LatticeJson {
            format_version: FORMAT_VERSION,
            elements: l.labels().to_vec(),
            leq,
            ortho: None,
            zero: l.label(l.zero()).to_string(),
            one: l.label(l.one()).to_string(),
        }
    }

    pub fn from_ortho(l: &OrthoLattice) -> Self {
        let mut json = LatticeJson::from_lattice(l.lattice());
        json.ortho = Some(
            (0..l.len())
                .map(|x| [l.label(x).to_string(), l.label(l.ortho(x)).to_string()])
                .collect(),
        );
        json
    }

    pub fn parse(text: &str) -> Result<Self> {
        let json: LatticeJson = serde_json::from_str(text)?;
        if json.format_version != FORMAT_VERSION {
            return Err(Error::parse(
                1,
                format!("unsupported format_version {}", json.format_version),
            ));
        }
        Ok(json)
    }

    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("lattice JSON serializes")
    }

    fn index(&self, label: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == label)
            .ok_or_else(|| Error::parse(1, format!("unknown element `{label}`")))
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        let pairs = self
            .leq
            .iter()
            .map(|[x, y]| Ok((self.index(x)?, self.index(y)?)))
            .collect::<Result<Vec<_>>>()?;
        let lattice = Lattice::from_pairs(self.elements.clone(), &pairs)?;
        if lattice.label(lattice.zero()) != self.zero || lattice.label(lattice.one()) != self.one {
            return Err(Error::InvalidArgument(format!(
                "declared bounds `{}`/`{}` do not match the order",
                self.zero, self.one
            )));
        }
        Ok(lattice)
    }

    /// The ortholattice, or `None` when the document has no `ortho` field.
    pub fn to_ortho_lattice(&self) -> Result<Option<OrthoLattice>> {
        let Some(ortho) = &self.ortho else {
            return Ok(None);
        };
        let lattice = self.to_lattice()?;
        let pairs = ortho
            .iter()
            .map(|[x, y]| Ok((self.index(x)?, self.index(y)?)))
            .collect::<Result<Vec<_>>>()?;
        let mut map = vec![usize::MAX; lattice.len()];
        for (x, y) in pairs {
            for (a, b) in [(x, y), (y, x)] {
                if map[a] != usize::MAX && map[a] != b {
                    return Err(Error::NotAnOrtholattice(format!(
                        "`{}` has two complements",
                        self.elements[a]
                    )));
                }
                map[a] = b;
            }
        }
        if let Some(x) = map.iter().position(|&c| c == usize::MAX) {
            return Err(Error::NotAnOrtholattice(format!(
                "`{}` has no complement",
                self.elements[x]
            )));
        }
        Ok(Some(OrthoLattice::new(lattice, map)?))
    }
}

impl OrthoLattice {
    pub fn to_json(&self) -> String {
        LatticeJson::from_ortho(self).to_string_pretty()
    }

    pub fn from_json(text: &str) -> Result<OrthoLattice> {
        LatticeJson::parse(text)?
            .to_ortho_lattice()?
            .ok_or_else(|| Error::parse(1, "missing `ortho` field"))
    }
}
