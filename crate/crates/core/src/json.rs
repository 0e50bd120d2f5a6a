//! JSON forms of the public types.
//!
//! - elements: `{"i":1,"j":2,"set":0}`, or the string `"zero"`
//! - families: `{"bounds":[0,1,2],"empty":false}` (validated on read)
//! - endomorphism specs: objects tagged by `"kind"` — `alpha_bracket`,
//!   `alpha`, and `beta` carry their parameters; `table` carries the family
//!   and the generator images
//! - classification reports: `family`, `bounds`, `candidates`,
//!   `prunedCounts`, `elapsed_ms`
//!
//! Output is canonical: struct fields in a fixed order, map keys sorted.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Element, Nat};
use crate::classify::{Candidate, ClassificationReport};
use crate::endo::{EndoSpec, GeneratorTable};
use crate::family::OmegaClosedFamily;

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match *self {
            Element::Zero => serializer.serialize_str("zero"),
            Element::Triple { i, j, set } => {
                let mut st = serializer.serialize_struct("Element", 3)?;
                st.serialize_field("i", &i)?;
                st.serialize_field("j", &j)?;
                st.serialize_field("set", &set.lower_bound())?;
                st.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ElementVisitor;

        impl<'de> serde::de::Visitor<'de> for ElementVisitor {
            type Value = Element;

            fn expecting(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.write_str("\"zero\" or an object with fields i, j, set")
            }

            fn visit_str<E: serde::de::Error>(self, value: &str) -> Result<Element, E> {
                if value == "zero" {
                    Ok(Element::Zero)
                } else {
                    Err(E::custom(format!(
                        "unknown element string {value:?}; the only string form is \"zero\""
                    )))
                }
            }

            fn visit_map<A: serde::de::MapAccess<'de>>(
                self,
                mut map: A,
            ) -> Result<Element, A::Error> {
                let (mut i, mut j, mut set) = (None, None, None);
                while let Some(key) = map.next_key::<String>()? {
                    match key.as_str() {
                        "i" => i = Some(map.next_value::<Nat>()?),
                        "j" => j = Some(map.next_value::<Nat>()?),
                        "set" => set = Some(map.next_value::<Nat>()?),
                        other => {
                            return Err(A::Error::custom(format!(
                                "unknown element field {other:?}; expected i, j, set"
                            )))
                        }
                    }
                }
                let i = i.ok_or_else(|| A::Error::missing_field("i"))?;
                let j = j.ok_or_else(|| A::Error::missing_field("j"))?;
                let set = set.ok_or_else(|| A::Error::missing_field("set"))?;
                Ok(Element::triple(i, j, set))
            }
        }

        deserializer.deserialize_any(ElementVisitor)
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    bounds: Vec<Nat>,
    #[serde(default)]
    empty: bool,
}

impl Serialize for OmegaClosedFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FamilyRepr { bounds: self.lower_bounds().to_vec(), empty: self.contains_empty() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OmegaClosedFamily {
    /// Runs the ω-closure validator, so invalid bound lists are rejected
    /// with the validator's witness in the message.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = FamilyRepr::deserialize(deserializer)?;
        OmegaClosedFamily::new(&repr.bounds, repr.empty).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum SpecRepr {
    AlphaBracket { k: Nat },
    Alpha { k: Nat, p: Nat },
    Beta { k: Nat, p: Nat },
    Table { family: OmegaClosedFamily, images: ImagesRepr },
}

#[derive(Serialize, Deserialize)]
struct ImagesRepr {
    plus: Element,
    minus: Element,
    /// Keyed by the decimal lower bound of the idempotent's set.
    e: BTreeMap<String, Element>,
}

impl Serialize for EndoSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = match self {
            EndoSpec::AlphaBracket { k } => SpecRepr::AlphaBracket { k: *k },
            EndoSpec::Alpha { k, p } => SpecRepr::Alpha { k: *k, p: *p },
            EndoSpec::Beta { k, p } => SpecRepr::Beta { k: *k, p: *p },
            EndoSpec::Table(table) => SpecRepr::Table {
                family: table.family().clone(),
                images: ImagesRepr {
                    plus: table.img_plus(),
                    minus: table.img_minus(),
                    e: table_images(table),
                },
            },
        };
        repr.serialize(serializer)
    }
}

fn table_images(table: &GeneratorTable) -> BTreeMap<String, Element> {
    table.img_e().iter().map(|(&a, &image)| (a.to_string(), image)).collect()
}

impl<'de> Deserialize<'de> for EndoSpec {
    /// Validates parameter ranges and table well-formedness on read.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SpecRepr::deserialize(deserializer)?;
        let spec = match repr {
            SpecRepr::AlphaBracket { k } => EndoSpec::alpha_bracket(k),
            SpecRepr::Alpha { k, p } => EndoSpec::alpha(k, p),
            SpecRepr::Beta { k, p } => EndoSpec::beta(k, p),
            SpecRepr::Table { family, images } => {
                let mut img_e = BTreeMap::new();
                for (key, image) in images.e {
                    let bound: Nat = key.parse().map_err(|_| {
                        D::Error::custom(format!(
                            "image key {key:?} is not a decimal lower bound"
                        ))
                    })?;
                    img_e.insert(bound, image);
                }
                GeneratorTable::new(family, images.plus, images.minus, img_e)
                    .map(EndoSpec::Table)
            }
        };
        spec.map_err(D::Error::custom)
    }
}

impl Serialize for Candidate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Candidate", 2)?;
        st.serialize_field("spec", &EndoSpec::Table(self.spec.clone()))?;
        st.serialize_field("matched", &self.matched)?;
        st.end()
    }
}

impl Serialize for ClassificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ClassificationReport", 5)?;
        st.serialize_field("family", &self.family)?;
        st.serialize_field("bounds", &self.bounds)?;
        st.serialize_field("candidates", &self.candidates)?;
        st.serialize_field("prunedCounts", &self.pruned_counts)?;
        st.serialize_field("elapsed_ms", &(self.elapsed.as_millis() as u64))?;
        st.end()
    }
}
