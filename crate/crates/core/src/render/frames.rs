use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use super::{render_network_svg, Camera, CanvasSpec, NetworkHighlights, RenderError};
use crate::network::{FrameSpec, NetworkScene, SCENE_SCHEMA_VERSION};
use crate::scalar::Real;

pub const FRAME_INDEX_FILE: &str = "index.json";

fn write(path: &Path, bytes: &[u8]) -> Result<(), RenderError> {
    fs::write(path, bytes).map_err(|source| RenderError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Writes `frame_NNNN.svg` and `frame_NNNN.json` per frame plus an index,
/// returning every path written in order.
pub fn render_frames<T: Real + Serialize>(
    scene: &NetworkScene<T>,
    frames: &[FrameSpec<T>],
    highlights: &NetworkHighlights<'_>,
    camera: &Camera,
    canvas: &CanvasSpec,
    dir: &Path,
) -> Result<Vec<PathBuf>, RenderError> {
    if frames.is_empty() {
        return Err(RenderError::InvalidArgument("no frames to render".into()));
    }
    fs::create_dir_all(dir).map_err(|source| RenderError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    let mut written = Vec::with_capacity(2 * frames.len() + 1);
    let mut entries = Vec::with_capacity(frames.len());
    for f in frames {
        let stem = format!("frame_{:04}", f.index);
        let svg_path = dir.join(format!("{stem}.svg"));
        let json_path = dir.join(format!("{stem}.json"));
        let svg = render_network_svg(scene, Some(f), highlights, camera, canvas)?;
        write(&svg_path, svg.as_bytes())?;
        let spec = serde_json::to_string_pretty(f).expect("frame serializes");
        write(&json_path, spec.as_bytes())?;
        entries.push(json!({
            "index": f.index,
            "cursor": f.cursor.to_rfc3339_opts(chrono::SecondsFormat::AutoSi, true),
            "visible": f.visible.len(),
            "svg": format!("{stem}.svg"),
            "json": format!("{stem}.json"),
        }));
        written.push(svg_path);
        written.push(json_path);
    }
    let index = json!({ "schema_version": SCENE_SCHEMA_VERSION, "frames": entries });
    let index_path = dir.join(FRAME_INDEX_FILE);
    write(&index_path, serde_json::to_string_pretty(&index).expect("index serializes").as_bytes())?;
    written.push(index_path);
    Ok(written)
}
