//! Wire formats for groupoids, `μ_N` cocycles and local cover data.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::cocycle::CyclicCocycle;
use super::glue::LocalExtensionData;
use super::group::{FiniteGroup, RightAction};
use super::groupoid::FiniteGroupoid;

/// An object named either by position in `objects` or by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObjectRef {
    Index(usize),
    Label(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowJson {
    pub id: usize,
    pub src: ObjectRef,
    pub tgt: ObjectRef,
}

/// `{"objects":[…],"arrows":[{"id","src","tgt"}],"compose":[[x,y,xy],…]}`.
/// Arrow ids must be `0..n`; identities and inverses are derived on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidJson {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    pub compose: Vec<[usize; 3]>,
}

impl From<&FiniteGroupoid> for GroupoidJson {
    fn from(g: &FiniteGroupoid) -> Self {
        let label = |o: usize| ObjectRef::Label(g.objects()[o].clone());
        GroupoidJson {
            objects: g.objects().to_vec(),
            arrows: (0..g.n_arrows())
                .map(|x| ArrowJson {
                    id: x,
                    src: label(g.source(x)),
                    tgt: label(g.target(x)),
                })
                .collect(),
            compose: g.composition_entries().into_iter().map(|(x, y, z)| [x, y, z]).collect(),
        }
    }
}

impl TryFrom<GroupoidJson> for FiniteGroupoid {
    type Error = Error;

    fn try_from(j: GroupoidJson) -> Result<Self> {
        let n = j.arrows.len();
        let resolve = |r: &ObjectRef| -> Result<usize> {
            match r {
                ObjectRef::Index(i) if *i < j.objects.len() => Ok(*i),
                ObjectRef::Index(i) => Err(Error::Format(format!("object index {i} out of range"))),
                ObjectRef::Label(l) => j
                    .objects
                    .iter()
                    .position(|o| o == l)
                    .ok_or_else(|| Error::Format(format!("unknown object label {l:?}"))),
            }
        };
        let mut source = vec![usize::MAX; n];
        let mut target = vec![usize::MAX; n];
        for a in &j.arrows {
            if a.id >= n || source[a.id] != usize::MAX {
                return Err(Error::Format(format!(
                    "arrow ids must be a permutation of 0..{n}; saw {}",
                    a.id
                )));
            }
            source[a.id] = resolve(&a.src)?;
            target[a.id] = resolve(&a.tgt)?;
        }
        let compose: Vec<(usize, usize, usize)> = j.compose.iter().map(|c| (c[0], c[1], c[2])).collect();
        FiniteGroupoid::from_composition(j.objects, source, target, &compose)
    }
}

/// `{"modulus":N,"values":[[x,y,k],…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleJson {
    pub modulus: u32,
    pub values: Vec<[u64; 3]>,
}

impl From<&CyclicCocycle> for CocycleJson {
    fn from(c: &CyclicCocycle) -> Self {
        CocycleJson {
            modulus: c.modulus(),
            values: c
                .values()
                .iter()
                .map(|(&(x, y), &k)| [x as u64, y as u64, k as u64])
                .collect(),
        }
    }
}

impl TryFrom<CocycleJson> for CyclicCocycle {
    type Error = Error;

    fn try_from(j: CocycleJson) -> Result<Self> {
        if j.modulus == 0 {
            return Err(Error::Format("cocycle modulus must be positive".into()));
        }
        let values: BTreeMap<(usize, usize), u32> = j
            .values
            .iter()
            .map(|v| ((v[0] as usize, v[1] as usize), (v[2] % j.modulus as u64) as u32))
            .collect();
        CyclicCocycle::new(j.modulus, values)
    }
}

/// Local cover data: group table, right action table `act[A][g]`, charts,
/// transitions `[α, α', f, A, k]` and local cocycles `[α, β, γ, f, g, A, k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u32>,
    pub group: Vec<Vec<usize>>,
    pub action: Vec<Vec<usize>>,
    pub charts: Vec<Vec<usize>>,
    pub transitions: Vec<[u64; 5]>,
    pub omega: Vec<[u64; 7]>,
}

impl CoverJson {
    pub fn from_data(d: &LocalExtensionData, modulus: Option<u32>) -> Self {
        CoverJson {
            modulus,
            group: d.group.table().to_vec(),
            action: d.action.table().to_vec(),
            charts: d.charts.clone(),
            transitions: d
                .transitions
                .iter()
                .map(|(&(a, b, f, x), &k)| [a as u64, b as u64, f as u64, x as u64, k as u64])
                .collect(),
            omega: d
                .omega
                .iter()
                .map(|(&(a, b, c, f, g, x), &k)| {
                    [a as u64, b as u64, c as u64, f as u64, g as u64, x as u64, k as u64]
                })
                .collect(),
        }
    }

    pub fn into_data(self) -> Result<LocalExtensionData> {
        let group = FiniteGroup::from_table(self.group)?;
        let action = RightAction::new(&group, self.action)?;
        let as_u32 = |k: u64| u32::try_from(k).map_err(|_| Error::Format(format!("phase {k} too large")));
        let transitions = self
            .transitions
            .iter()
            .map(|t| Ok(((t[0] as usize, t[1] as usize, t[2] as usize, t[3] as usize), as_u32(t[4])?)))
            .collect::<Result<_>>()?;
        let omega = self
            .omega
            .iter()
            .map(|t| {
                Ok((
                    (t[0] as usize, t[1] as usize, t[2] as usize, t[3] as usize, t[4] as usize, t[5] as usize),
                    as_u32(t[6])?,
                ))
            })
            .collect::<Result<_>>()?;
        Ok(LocalExtensionData {
            group,
            action,
            charts: self.charts,
            transitions,
            omega,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{action_groupoid, FiniteGroup, RightAction};

    #[test]
    fn groupoid_round_trip() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let gr = action_groupoid(&RightAction::regular(&g), &g).unwrap();
        let text = serde_json::to_string(&GroupoidJson::from(&gr)).unwrap();
        let back = FiniteGroupoid::try_from(serde_json::from_str::<GroupoidJson>(&text).unwrap()).unwrap();
        assert_eq!(back, gr);
    }

    #[test]
    fn z2_by_hand() {
        let text = r#"{"objects":["*"],"arrows":[{"id":0,"src":"*","tgt":"*"},{"id":1,"src":0,"tgt":0}],
                       "compose":[[0,0,0],[0,1,1],[1,0,1],[1,1,0]]}"#;
        let g = FiniteGroupoid::try_from(serde_json::from_str::<GroupoidJson>(text).unwrap()).unwrap();
        assert_eq!(g.identity(0), 0);
        assert_eq!(g.inverse(1), 1);
    }

    #[test]
    fn bad_ids_are_format_errors() {
        let text = r#"{"objects":["*"],"arrows":[{"id":3,"src":"*","tgt":"*"}],"compose":[]}"#;
        let j: GroupoidJson = serde_json::from_str(text).unwrap();
        assert!(matches!(FiniteGroupoid::try_from(j), Err(Error::Format(_))));
    }

    #[test]
    fn cocycle_round_trip() {
        let j = CocycleJson { modulus: 4, values: vec![[0, 0, 5], [1, 0, 2]] };
        let c = CyclicCocycle::try_from(j).unwrap();
        assert_eq!(c.get(0, 0).unwrap(), 1);
        assert_eq!(CocycleJson::from(&c).values, vec![[0, 0, 1], [1, 0, 2]]);
    }
}
