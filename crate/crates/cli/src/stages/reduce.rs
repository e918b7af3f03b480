use std::fs;

use ideascope_core::dimred::{
    explained_variance_report, fit_pca, fit_tsne, project, write_projections_csv, ProjectionSet,
};
use ideascope_core::embed::read_vectors_csv;
use serde_json::json;

use super::{to_value, Input, Pipeline, StageStatus, PROJECTIONS_FILE, VECTORS_FILE};
use crate::config::Reducer;
use crate::error::CliError;

pub(super) fn run(p: &mut Pipeline) -> Result<StageStatus, CliError> {
    let vectors = p.artifact(VECTORS_FILE);
    let inputs = [Input::artifact("vectors", vectors.clone(), "embed")];
    let config = to_value(&p.cfg.reduce);
    p.cached("reduce", config, &inputs, |ctx| {
        let file = fs::File::open(&vectors).map_err(|e| CliError::io(&vectors, e))?;
        let (ids, rows) = read_vectors_csv::<f64, _>(file)?;
        let mut written = Vec::new();
        let raw = match ctx.cfg.reduce.method {
            Reducer::Pca => {
                let model = fit_pca(&rows)?;
                let report = explained_variance_report(&model, ctx.cfg.reduce.variance_floor);
                if let Some(w) = &report.warning {
                    log::warn!("{w}");
                }
                written.push(ctx.write_json("pca.json", &model)?);
                written.push(ctx.write_json("variance.json", &report)?);
                project(&model, &rows)?
            }
            Reducer::Tsne => {
                let result = fit_tsne(&rows, &ctx.cfg.reduce.tsne, ctx.seed)?;
                let summary = json!({
                    "seed": ctx.seed,
                    "final_kl": result.kl_history.last(),
                    "kl_history": result.kl_history,
                });
                written.push(ctx.write_json("tsne.json", &summary)?);
                result.points
            }
        };
        let set = ProjectionSet::from_raw(&ids, &raw)?;
        let mut csv = Vec::new();
        write_projections_csv(&mut csv, &set)?;
        written.push(ctx.write(PROJECTIONS_FILE, csv)?);
        Ok(written)
    })
}
