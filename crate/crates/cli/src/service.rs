//! Stateless JSON API.
//!
//! | route | body | reply |
//! |---|---|---|
//! | `POST /api/reconstruct` | [`ReconstructRequest`] | [`ReconstructResponse`] |
//! | `POST /api/sample` | [`SampleRequest`] | [`SampleResponse`] |
//! | `POST /api/cgr` | [`CgrRequest`] | [`CgrResponse`] |
//! | `GET /healthz` | | `ok` |
//!
//! Failures reply `{"error": "..."}` with 400 for malformed requests, 413 for
//! oversized ones and 422 for a target distribution that is not on the simplex.

use axum::body::Bytes;
use axum::extract::DefaultBodyLimit;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;
use chaoskit::debruijn::reconstruct;
use chaoskit::distribution::{empirical_distribution, hit_and_run_sample, KmerDistribution, MAX_CONSTRAINT_K};
use chaoskit::imaging::{pgm_bytes, render_cgr};
use chaoskit::seq::{count_kmers, kmer_space, DnaSequence};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tower_http::cors::CorsLayer;

/// Largest target length or input sequence length accepted.
pub const MAX_LENGTH: u64 = 2_000_000;
/// Longest reconstructed sequence echoed back in a response.
pub const MAX_RETURNED_SEQUENCE: u64 = 100_000;
/// Largest image resolution order.
pub const MAX_RESOLUTION: usize = 10;
pub const DEFAULT_RESOLUTION: usize = 8;
/// Largest sampler chain length accepted per request.
pub const MAX_ITERATIONS: usize = 100_000;
pub const DEFAULT_ITERATIONS: usize = 1000;
pub const DEFAULT_SEED: u64 = 42;
/// Request bodies above this size are refused with 413 before parsing.
pub const BODY_LIMIT: usize = 8 * 1024 * 1024;

const SLIDER_K: usize = 2;

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SampleSpec {
    #[serde(default)]
    pub iterations: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ReconstructRequest {
    pub k: usize,
    pub n: u64,
    #[serde(default)]
    pub theta: Option<Vec<f64>>,
    /// Unnormalized weights for the 16 dinucleotides.
    #[serde(default)]
    pub sliders: Option<Vec<f64>>,
    #[serde(default)]
    pub sample: Option<SampleSpec>,
    #[serde(default)]
    pub resolution: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct ReconstructResponse {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sequence: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    pub length: usize,
    pub empirical_theta: Vec<f64>,
    pub achieved_l1: f64,
    pub bound_l1: f64,
    pub n_artificial: u64,
    pub n_artificial_balance: u64,
    pub n_artificial_connect: u64,
    pub used_direct_eulerian_path: bool,
    pub image: String,
    pub theta_used: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct SampleRequest {
    pub k: usize,
    #[serde(default)]
    pub iterations: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SampleResponse {
    pub theta: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CgrRequest {
    pub sequence: String,
    pub resolution: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "camelCase")]
pub struct CgrResponse {
    pub image: String,
    pub fcgr_sum: u64,
}

/// An error reply.
#[derive(Debug, Clone, PartialEq)]
pub struct ApiError {
    pub status: StatusCode,
    pub message: String,
}

impl ApiError {
    fn bad_request(message: impl Into<String>) -> ApiError {
        ApiError { status: StatusCode::BAD_REQUEST, message: message.into() }
    }

    fn too_large(message: impl Into<String>) -> ApiError {
        ApiError { status: StatusCode::PAYLOAD_TOO_LARGE, message: message.into() }
    }

    fn unprocessable(message: impl Into<String>) -> ApiError {
        ApiError { status: StatusCode::UNPROCESSABLE_ENTITY, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> ApiError {
        ApiError { status: StatusCode::INTERNAL_SERVER_ERROR, message: message.into() }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(serde_json::json!({ "error": self.message }))).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

pub fn router() -> Router {
    Router::new()
        .route("/api/reconstruct", post(reconstruct_handler))
        .route("/api/sample", post(sample_handler))
        .route("/api/cgr", post(cgr_handler))
        .route("/healthz", get(|| async { "ok" }))
        .layer(DefaultBodyLimit::max(BODY_LIMIT))
        .layer(CorsLayer::permissive())
}

/// Any JSON syntax or shape error is a 400.
fn parse<T: DeserializeOwned>(body: &[u8]) -> ApiResult<T> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("malformed request: {e}")))
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> ApiResult<T> + Send + 'static) -> ApiResult<T> {
    tokio::task::spawn_blocking(f).await.map_err(|e| ApiError::internal(e.to_string()))?
}

async fn reconstruct_handler(body: Bytes) -> ApiResult<Json<ReconstructResponse>> {
    let req: ReconstructRequest = parse(&body)?;
    blocking(move || handle_reconstruct(&req)).await.map(Json)
}

async fn sample_handler(body: Bytes) -> ApiResult<Json<SampleResponse>> {
    let req: SampleRequest = parse(&body)?;
    blocking(move || handle_sample(&req)).await.map(Json)
}

async fn cgr_handler(body: Bytes) -> ApiResult<Json<CgrResponse>> {
    let req: CgrRequest = parse(&body)?;
    blocking(move || handle_cgr(&req)).await.map(Json)
}

fn check_order(k: usize) -> ApiResult<()> {
    if !(2..=MAX_CONSTRAINT_K).contains(&k) {
        return Err(ApiError::bad_request(format!("k = {k} outside 2..={MAX_CONSTRAINT_K}")));
    }
    Ok(())
}

fn check_resolution(r: usize) -> ApiResult<()> {
    if !(1..=MAX_RESOLUTION).contains(&r) {
        return Err(ApiError::bad_request(format!("resolution {r} outside 1..={MAX_RESOLUTION}")));
    }
    Ok(())
}

fn run_sampler(k: usize, iterations: Option<usize>, seed: Option<u64>) -> ApiResult<KmerDistribution> {
    let iterations = iterations.unwrap_or(DEFAULT_ITERATIONS);
    if !(1..=MAX_ITERATIONS).contains(&iterations) {
        return Err(ApiError::bad_request(format!("iterations {iterations} outside 1..={MAX_ITERATIONS}")));
    }
    hit_and_run_sample(k, iterations, seed.unwrap_or(DEFAULT_SEED)).map_err(|e| ApiError::internal(e.to_string()))
}

fn resolve_target(req: &ReconstructRequest) -> ApiResult<KmerDistribution> {
    let k = req.k;
    match (&req.theta, &req.sliders, &req.sample) {
        (Some(theta), None, None) => {
            if theta.len() != kmer_space(k) {
                return Err(ApiError::unprocessable(format!(
                    "theta has {} entries, expected {}",
                    theta.len(),
                    kmer_space(k)
                )));
            }
            KmerDistribution::new(k, theta.clone()).map_err(|e| ApiError::unprocessable(e.to_string()))
        }
        (None, Some(weights), None) => {
            if k != SLIDER_K {
                return Err(ApiError::bad_request(format!("sliders require k = {SLIDER_K}")));
            }
            if weights.len() != kmer_space(SLIDER_K) {
                return Err(ApiError::unprocessable(format!("expected {} sliders", kmer_space(SLIDER_K))));
            }
            KmerDistribution::from_weights(k, weights.clone()).map_err(|e| ApiError::unprocessable(e.to_string()))
        }
        (None, None, Some(spec)) => run_sampler(k, spec.iterations, spec.seed),
        _ => Err(ApiError::bad_request("exactly one of theta, sliders and sample is required")),
    }
}

pub fn handle_reconstruct(req: &ReconstructRequest) -> ApiResult<ReconstructResponse> {
    check_order(req.k)?;
    if req.n > MAX_LENGTH {
        return Err(ApiError::too_large(format!("n = {} exceeds {MAX_LENGTH}", req.n)));
    }
    let resolution = req.resolution.unwrap_or(DEFAULT_RESOLUTION);
    check_resolution(resolution)?;
    if req.n as usize <= req.k {
        return Err(ApiError::bad_request(format!("n = {} must exceed k = {}", req.n, req.k)));
    }
    let theta = resolve_target(req)?;
    let (seq, report) = reconstruct(&theta, req.n as usize).map_err(|e| ApiError::unprocessable(e.to_string()))?;
    let image = render_cgr(&seq, resolution).map_err(|e| ApiError::bad_request(e.to_string()))?;
    let empirical = count_kmers(&seq, req.k)
        .and_then(|c| empirical_distribution(&c))
        .map_err(|e| ApiError::internal(e.to_string()))?;
    let (sequence, note) = if req.n <= MAX_RETURNED_SEQUENCE {
        (Some(String::from_utf8(seq.to_ascii()).expect("ACGT is ASCII")), None)
    } else {
        (None, Some(format!("sequence omitted above {MAX_RETURNED_SEQUENCE} letters; download is not supported")))
    };
    Ok(ReconstructResponse {
        sequence,
        note,
        length: seq.len(),
        empirical_theta: empirical.into_theta(),
        achieved_l1: report.achieved_l1,
        bound_l1: report.bound_l1,
        n_artificial: report.n_artificial(),
        n_artificial_balance: report.n_artificial_balance,
        n_artificial_connect: report.n_artificial_connect,
        used_direct_eulerian_path: report.used_direct_eulerian_path,
        image: BASE64.encode(pgm_bytes(&image)),
        theta_used: theta.into_theta(),
    })
}

pub fn handle_sample(req: &SampleRequest) -> ApiResult<SampleResponse> {
    check_order(req.k)?;
    Ok(SampleResponse { theta: run_sampler(req.k, req.iterations, req.seed)?.into_theta() })
}

pub fn handle_cgr(req: &CgrRequest) -> ApiResult<CgrResponse> {
    if req.sequence.len() as u64 > MAX_LENGTH {
        return Err(ApiError::too_large(format!("sequence longer than {MAX_LENGTH}")));
    }
    check_resolution(req.resolution)?;
    let seq = DnaSequence::from_ascii(req.sequence.as_bytes()).map_err(|e| ApiError::bad_request(e.to_string()))?;
    let image = render_cgr(&seq, req.resolution).map_err(|e| ApiError::bad_request(e.to_string()))?;
    Ok(CgrResponse { image: BASE64.encode(pgm_bytes(&image)), fcgr_sum: (seq.len() - req.resolution + 1) as u64 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn request(k: usize, n: u64) -> ReconstructRequest {
        ReconstructRequest { k, n, theta: None, sliders: None, sample: None, resolution: None }
    }

    #[test]
    fn source_fields_are_exclusive() {
        let mut req = request(2, 100);
        assert_eq!(handle_reconstruct(&req).unwrap_err().status, StatusCode::BAD_REQUEST);
        req.sliders = Some(vec![1.0; 16]);
        req.sample = Some(SampleSpec { iterations: None, seed: None });
        assert_eq!(handle_reconstruct(&req).unwrap_err().status, StatusCode::BAD_REQUEST);
    }

    #[test]
    fn status_codes() {
        let mut req = request(2, MAX_LENGTH + 1);
        req.sliders = Some(vec![1.0; 16]);
        assert_eq!(handle_reconstruct(&req).unwrap_err().status, StatusCode::PAYLOAD_TOO_LARGE);
        let mut req = request(2, 100);
        req.theta = Some(vec![0.5; 16]);
        assert_eq!(handle_reconstruct(&req).unwrap_err().status, StatusCode::UNPROCESSABLE_ENTITY);
        req.theta = Some(vec![1.0 / 8.0; 8]);
        assert_eq!(handle_reconstruct(&req).unwrap_err().status, StatusCode::UNPROCESSABLE_ENTITY);
        let mut req = request(3, 100);
        req.sliders = Some(vec![1.0; 16]);
        assert_eq!(handle_reconstruct(&req).unwrap_err().status, StatusCode::BAD_REQUEST);
        let mut req = request(7, 100);
        req.sample = Some(SampleSpec { iterations: None, seed: None });
        assert_eq!(handle_reconstruct(&req).unwrap_err().status, StatusCode::BAD_REQUEST);
    }

    #[test]
    fn long_targets_omit_the_sequence() {
        let mut req = request(2, MAX_RETURNED_SEQUENCE + 1);
        req.sliders = Some(vec![1.0; 16]);
        req.resolution = Some(2);
        let resp = handle_reconstruct(&req).unwrap();
        assert!(resp.sequence.is_none());
        assert!(resp.note.is_some());
        req.n = MAX_RETURNED_SEQUENCE;
        let resp = handle_reconstruct(&req).unwrap();
        assert_eq!(resp.sequence.unwrap().len(), resp.length);
    }

    #[test]
    fn cgr_sum_echo() {
        let resp = handle_cgr(&CgrRequest { sequence: "ACGTACGT".into(), resolution: 3 }).unwrap();
        assert_eq!(resp.fcgr_sum, 6);
        let err = handle_cgr(&CgrRequest { sequence: "AC".into(), resolution: 3 }).unwrap_err();
        assert_eq!(err.status, StatusCode::BAD_REQUEST);
    }
}
