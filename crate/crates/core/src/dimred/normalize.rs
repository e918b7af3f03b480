use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::DimredError;
use crate::scalar::{Point2, Real};

/// Per-axis min-max scaling into `[0, 1]²`. A constant axis maps to 0.5.
pub fn normalize_unit_square<T: Real>(points: &[Point2<T>]) -> Vec<Point2<T>> {
    if points.is_empty() {
        return Vec::new();
    }
    let mut lo = [T::infinity(); 2];
    let mut hi = [T::neg_infinity(); 2];
    for p in points {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    let half = T::lit(0.5);
    points
        .iter()
        .map(|p| {
            let mut q = [half; 2];
            for k in 0..2 {
                let span = hi[k] - lo[k];
                if span > T::zero() {
                    q[k] = ((p[k] - lo[k]) / span).max(T::zero()).min(T::one());
                }
            }
            q
        })
        .collect()
}

/// One idea's coordinates: raw reducer output and the normalized display pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectedIdea<T> {
    pub id: String,
    pub pc1_raw: T,
    pub pc2_raw: T,
    pub pc1: T,
    pub pc2: T,
}

impl<T: Real> ProjectedIdea<T> {
    pub fn position(&self) -> Point2<T> {
        [self.pc1, self.pc2]
    }

    pub fn raw(&self) -> Point2<T> {
        [self.pc1_raw, self.pc2_raw]
    }
}

/// Projected ideas addressable by id.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionSet<T> {
    items: Vec<ProjectedIdea<T>>,
    index: HashMap<String, usize>,
}

impl<T: Real> ProjectionSet<T> {
    /// Normalizes `raw` and pairs it with `ids` in order.
    pub fn from_raw(ids: &[String], raw: &[Point2<T>]) -> Result<Self, DimredError> {
        if ids.len() != raw.len() {
            return Err(DimredError::InvalidArgument(format!(
                "{} ids for {} points",
                ids.len(),
                raw.len()
            )));
        }
        let norm = normalize_unit_square(raw);
        let items = ids
            .iter()
            .zip(raw)
            .zip(norm)
            .map(|((id, r), n)| ProjectedIdea {
                id: id.clone(),
                pc1_raw: r[0],
                pc2_raw: r[1],
                pc1: n[0],
                pc2: n[1],
            })
            .collect();
        Self::from_items(items)
    }

    pub fn from_items(items: Vec<ProjectedIdea<T>>) -> Result<Self, DimredError> {
        let mut index = HashMap::with_capacity(items.len());
        for (i, item) in items.iter().enumerate() {
            if index.insert(item.id.clone(), i).is_some() {
                return Err(DimredError::InvalidArgument(format!(
                    "duplicate projection id `{}`",
                    item.id
                )));
            }
        }
        Ok(Self { items, index })
    }

    pub fn get(&self, id: &str) -> Option<&ProjectedIdea<T>> {
        self.index.get(id).map(|&i| &self.items[i])
    }

    pub fn items(&self) -> &[ProjectedIdea<T>] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_map_to_corners() {
        assert_eq!(
            normalize_unit_square(&[[0.0, 0.0], [2.0, 4.0]]),
            vec![[0.0, 0.0], [1.0, 1.0]]
        );
    }

    #[test]
    fn single_point_is_centered() {
        assert_eq!(normalize_unit_square(&[[3.0f64, -7.0]]), vec![[0.5, 0.5]]);
    }

    #[test]
    fn constant_axis() {
        let out = normalize_unit_square(&[[1.0, 1.0], [2.0, 1.0], [3.0, 1.0]]);
        assert_eq!(out, vec![[0.0, 0.5], [0.5, 0.5], [1.0, 0.5]]);
    }

    #[test]
    fn projection_set_lookup() {
        let ids = vec!["a".to_string(), "b".to_string()];
        let set = ProjectionSet::from_raw(&ids, &[[0.0, 1.0], [2.0, 3.0]]).unwrap();
        assert_eq!(set.get("b").unwrap().position(), [1.0, 1.0]);
        assert_eq!(set.get("b").unwrap().raw(), [2.0, 3.0]);
        assert!(set.get("c").is_none());
        assert!(ProjectionSet::from_raw(&ids, &[[0.0, 1.0]]).is_err());
    }
}
