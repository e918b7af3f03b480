use std::io::{Read, Write};

use super::{DimredError, ProjectedIdea, ProjectionSet};
use crate::scalar::Real;

/// Writes `id,pc1_raw,pc2_raw,pc1,pc2`.
pub fn write_projections_csv<T: Real, W: Write>(w: W, set: &ProjectionSet<T>) -> Result<(), DimredError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["id", "pc1_raw", "pc2_raw", "pc1", "pc2"])?;
    for p in set.items() {
        out.write_record([
            p.id.clone(),
            p.pc1_raw.to_string(),
            p.pc2_raw.to_string(),
            p.pc1.to_string(),
            p.pc2.to_string(),
        ])?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_projections_csv<T: Real, R: Read>(r: R) -> Result<ProjectionSet<T>, DimredError> {
    let mut rdr = csv::Reader::from_reader(r);
    let mut items = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        if rec.len() != 5 {
            return Err(DimredError::InvalidArgument(format!(
                "projection row has {} fields, expected 5",
                rec.len()
            )));
        }
        let num = |i: usize| -> Result<T, DimredError> {
            rec[i]
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(T::lit)
                .ok_or_else(|| DimredError::InvalidArgument(format!("bad number `{}`", &rec[i])))
        };
        items.push(ProjectedIdea {
            id: rec[0].to_string(),
            pc1_raw: num(1)?,
            pc2_raw: num(2)?,
            pc1: num(3)?,
            pc2: num(4)?,
        });
    }
    ProjectionSet::from_items(items)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let ids = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        let set = ProjectionSet::from_raw(&ids, &[[0.1, -3.0], [0.7, 2.0], [1.0 / 3.0, 0.0]]).unwrap();
        let mut buf = Vec::new();
        write_projections_csv(&mut buf, &set).unwrap();
        assert!(buf.starts_with(b"id,pc1_raw,pc2_raw,pc1,pc2\n"));
        let back: ProjectionSet<f64> = read_projections_csv(buf.as_slice()).unwrap();
        assert_eq!(back, set);
    }
}
