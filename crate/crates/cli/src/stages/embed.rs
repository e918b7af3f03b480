use ideascope_core::embed::{save_model, tokenize, train_doc2vec, write_vectors_csv, DocManifest};
use serde_json::json;

use super::{load_session, to_value, Pipeline, StageStatus, VECTORS_FILE};
use crate::error::CliError;

pub(super) fn run(p: &mut Pipeline) -> Result<StageStatus, CliError> {
    let inputs = p.session_inputs(false)?;
    let config = to_value(&p.cfg.embed);
    p.cached("embed", config, &inputs, |ctx| {
        let session = load_session(ctx.cfg)?;
        let ids: Vec<String> = session.ideas.iter().map(|i| i.id.clone()).collect();
        let docs: Vec<Vec<String>> = session.ideas.iter().map(|i| tokenize(&i.text)).collect();
        let model = train_doc2vec::<f64, _>(&docs, &ctx.cfg.embed, ctx.seed)?;

        let mut bin = Vec::new();
        save_model(&model, &mut bin)?;
        let mut csv = Vec::new();
        write_vectors_csv(&mut csv, &ids, &model.doc_vectors())?;
        let manifest = DocManifest {
            dim: model.dim(),
            rows: ids,
        };
        let losses = model.epoch_losses();
        let training = json!({
            "documents": model.n_docs(),
            "vocabulary": model.vocab().len(),
            "dim": model.dim(),
            "seed": ctx.seed,
            "epoch_losses": losses,
            "final_loss": losses.last(),
        });
        Ok(vec![
            ctx.write("model.bin", bin)?,
            ctx.write(VECTORS_FILE, csv)?,
            ctx.write_json("docs.json", &manifest)?,
            ctx.write_json("training.json", &training)?,
        ])
    })
}
