// Command-line surface: parse a contraction pair, run the dilation /
// factorization / variety pipeline, and emit machine-readable reports.
//
// Exit codes: 0 when every verdict passes, 2 when a verdict fails,
// 1 on input or usage errors.

#include "CLI11.hpp"
#include "bcldil/bcl.hpp"
#include "bcldil/factor.hpp"
#include "bcldil/generate.hpp"
#include "bcldil/io.hpp"
#include "bcldil/variety.hpp"

#include <cstdint>
#include <limits>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace bcldil;

struct JobConfig {
  std::string command;
  std::string input;
  std::vector<std::string> polys;
  double tol = defaults::tol;
  double purityMargin = defaults::purityMargin;
  double truncationTol = defaults::truncationTol;
  int degree = -1;  // -1: choose automatically
  int samples = defaults::boundarySamples;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

// residual thresholds cited by every verdict
namespace thresholds {
constexpr double gram = 1e-10;
constexpr double intertwine = 1e-8;
constexpr double pencilProduct = 1e-12;
constexpr double inner = 1e-12;
constexpr double compression = 1e-8;
constexpr double jointInvariance = 1e-8;
constexpr double unimodularity = 1e-10;
constexpr double determinant = 1e-8;
constexpr double vnSlack = defaults::vnSlack;
}  // namespace thresholds

class ReportBuilder {
 public:
  JsonWriter& writer() { return w_; }

  void verdict(const std::string& name, double value, double threshold) {
    bool pass = value <= threshold;
    allPass_ = allPass_ && pass;
    w_.key(name).beginObject();
    w_.key("value").value(value);
    w_.key("threshold").value(threshold);
    w_.key("pass").value(pass);
    w_.endObject();
  }

  bool allPass() const { return allPass_; }

 private:
  JsonWriter w_;
  bool allPass_ = true;
};

void writePencil(JsonWriter& w, const std::string& name, const LinearPencil& p) {
  w.key(name).beginObject();
  w.key("c0").value(p.c0);
  w.key("c1").value(p.c1);
  w.endObject();
}

void writePoint(JsonWriter& w, const VarietyPoint& pt) {
  w.beginObject();
  w.key("lambda1").value(pt.lambda1);
  w.key("lambda2").value(pt.lambda2);
  w.key("z").value(pt.sourceZ);
  w.key("residual1").value(pt.residual1);
  w.key("residual2").value(pt.residual2);
  w.endObject();
}

void writeConfig(JsonWriter& w, const JobConfig& cfg) {
  w.key("command").value(cfg.command);
  w.key("config").beginObject();
  w.key("input").value(cfg.input);
  w.key("poly").beginArray();
  for (const auto& p : cfg.polys) w.value(p);
  w.endArray();
  w.key("tol").value(cfg.tol);
  w.key("purityMargin").value(cfg.purityMargin);
  w.key("truncationTol").value(cfg.truncationTol);
  if (cfg.degree >= 0) {
    w.key("degree").value(cfg.degree);
  } else {
    w.key("degree").valueNull();
  }
  w.key("samples").value(cfg.samples);
  w.key("seed").value(static_cast<long long>(cfg.seed));
  w.key("out").value(cfg.out);
  w.key("format").value(cfg.format);
  w.endObject();
}

MatrixPair loadPair(const JobConfig& cfg) {
  // "random:<dim>" draws a seeded commuting pair instead of reading a file
  if (cfg.input.rfind("random:", 0) == 0) {
    int dim = 0;
    try {
      dim = std::stoi(cfg.input.substr(7));
    } catch (const std::exception&) {
      fail(Errc::UsageError, "random input spec must look like random:<dim>");
    }
    auto [t1, t2] = randomCommutingPair(dim, cfg.seed);
    return MatrixPair{t1, t2};
  }
  return parseMatrixFile(cfg.input);
}

void writeInput(JsonWriter& w, const MatrixPair& pair) {
  w.key("input").beginObject();
  w.key("dim").value(static_cast<int>(pair.t1.rows()));
  w.key("T1").value(pair.t1);
  w.key("T2").value(pair.t2);
  w.endObject();
}

struct CheckData {
  double commutatorNorm;
  double normT1, normT2, normProduct;
  double rhoT1, rhoT2, rhoProduct;
  int rankT1, rankT2, rankProduct;
};

CheckData computeCheck(const MatrixPair& pair, const JobConfig& cfg) {
  CheckData d{};
  Matrix product = pair.t1 * pair.t2;
  d.commutatorNorm = opNorm(pair.t1 * pair.t2 - pair.t2 * pair.t1);
  d.normT1 = opNorm(pair.t1);
  d.normT2 = opNorm(pair.t2);
  d.normProduct = opNorm(product);
  d.rhoT1 = spectralRadius(pair.t1);
  d.rhoT2 = spectralRadius(pair.t2);
  d.rhoProduct = spectralRadius(product);
  bool contractions = d.normT1 <= 1 + cfg.tol && d.normT2 <= 1 + cfg.tol;
  if (contractions) {
    d.rankT1 = defect(pair.t1, cfg.tol).rank;
    d.rankT2 = defect(pair.t2, cfg.tol).rank;
    d.rankProduct = opNorm(product) <= 1 + cfg.tol ? defect(product, cfg.tol).rank : -1;
  } else {
    d.rankT1 = d.rankT2 = d.rankProduct = -1;
  }
  return d;
}

void emitCheck(ReportBuilder& rb, const CheckData& d, const JobConfig& cfg) {
  JsonWriter& w = rb.writer();
  w.key("check").beginObject();
  w.key("commutatorNorm").value(d.commutatorNorm);
  w.key("normT1").value(d.normT1);
  w.key("normT2").value(d.normT2);
  w.key("normProduct").value(d.normProduct);
  w.key("spectralRadiusT1").value(d.rhoT1);
  w.key("spectralRadiusT2").value(d.rhoT2);
  w.key("spectralRadiusProduct").value(d.rhoProduct);
  w.key("defectRankT1").value(d.rankT1);
  w.key("defectRankT2").value(d.rankT2);
  w.key("defectRankProduct").value(d.rankProduct);
  w.key("verdicts").beginObject();
  rb.verdict("commuting", d.commutatorNorm, cfg.tol);
  rb.verdict("contractionT1", d.normT1, 1.0 + cfg.tol);
  rb.verdict("contractionT2", d.normT2, 1.0 + cfg.tol);
  rb.verdict("purityProduct", d.rhoProduct, 1.0 - cfg.purityMargin);
  w.endObject();
  w.endObject();
}

BCLOptions makeOptions(const JobConfig& cfg) {
  BCLOptions opts;
  opts.tol = cfg.tol;
  opts.purityMargin = cfg.purityMargin;
  opts.truncationTol = cfg.truncationTol;
  if (cfg.degree >= 0) opts.degreeOverride = cfg.degree;
  return opts;
}

void emitDilation(ReportBuilder& rb, const BCLDilationBundle& bundle) {
  JsonWriter& w = rb.writer();
  const BCLResidualReport& r = bundle.residuals;
  w.key("dilation").beginObject();
  w.key("dimE").value(bundle.triple.dimE);
  w.key("defectRankT1").value(bundle.defectT1.rank);
  w.key("defectRankT2").value(bundle.defectT2.rank);
  w.key("defectRankProduct").value(bundle.defectProduct.rank);
  w.key("degree").value(r.degree);
  w.key("tailBound").value(r.tailBound);
  w.key("V").value(bundle.v);
  w.key("U").value(bundle.triple.u);
  w.key("P").value(bundle.triple.p);
  writePencil(w, "Phi", bundle.phi);
  writePencil(w, "Psi", bundle.psi);
  w.key("residuals").beginObject();
  w.key("commutatorNorm").value(r.commutatorNorm);
  w.key("gramGap").value(r.gramGap);
  w.key("vIsometryGap").value(r.vIsometryGap);
  w.key("unitaryGapU").value(r.unitaryGapU);
  w.key("intertwineT1").value(r.intertwineT1);
  w.key("intertwineT2").value(r.intertwineT2);
  w.key("intertwineProduct").value(r.intertwineProduct);
  w.key("pencilProductGap").value(r.pencilProductGap);
  w.key("innerGapPhi").value(r.innerGapPhi);
  w.key("innerGapPsi").value(r.innerGapPsi);
  w.key("isometryDefectPiV").value(r.isometryDefectPiV);
  w.endObject();
  w.key("verdicts").beginObject();
  rb.verdict("gram", r.gramGap, thresholds::gram);
  rb.verdict("intertwineT1", r.intertwineT1, thresholds::intertwine);
  rb.verdict("intertwineT2", r.intertwineT2, thresholds::intertwine);
  rb.verdict("intertwineProduct", r.intertwineProduct, thresholds::intertwine);
  rb.verdict("pencilProduct", r.pencilProductGap, thresholds::pencilProduct);
  rb.verdict("innerPhi", r.innerGapPhi, thresholds::inner);
  rb.verdict("innerPsi", r.innerGapPsi, thresholds::inner);
  rb.verdict("isometryDefectPiV", r.isometryDefectPiV, r.tailBound + 1e-12);
  w.endObject();
  w.endObject();
}

void emitFactorization(ReportBuilder& rb, const FactorizationResult& fr,
                       const CompressionReport& t41) {
  JsonWriter& w = rb.writer();
  w.key("factorization").beginObject();
  writePencil(w, "phi", fr.phiSmall);
  writePencil(w, "psi", fr.psiSmall);
  w.key("residuals").beginObject();
  w.key("compressionT1").value(t41.compressionT1);
  w.key("compressionT2").value(t41.compressionT2);
  w.key("compressionProductPhiPsi").value(t41.compressionProductPhiPsi);
  w.key("compressionProductPsiPhi").value(t41.compressionProductPsiPhi);
  w.key("jointInvariancePhi").value(t41.jointInvariancePhi);
  w.key("jointInvariancePsi").value(t41.jointInvariancePsi);
  w.key("intertwinePhi").value(fr.residuals.intertwinePhi);
  w.key("intertwinePsi").value(fr.residuals.intertwinePsi);
  w.key("noncommutativityGap").value(t41.noncommutativityGap);
  w.endObject();
  w.key("verdicts").beginObject();
  rb.verdict("compressionT1", t41.compressionT1, thresholds::compression);
  rb.verdict("compressionT2", t41.compressionT2, thresholds::compression);
  rb.verdict("compressionProductPhiPsi", t41.compressionProductPhiPsi,
             thresholds::compression);
  rb.verdict("compressionProductPsiPhi", t41.compressionProductPsiPhi,
             thresholds::compression);
  rb.verdict("jointInvariancePhi", t41.jointInvariancePhi, thresholds::jointInvariance);
  rb.verdict("jointInvariancePsi", t41.jointInvariancePsi, thresholds::jointInvariance);
  rb.verdict("intertwinePhi", fr.residuals.intertwinePhi, thresholds::intertwine);
  rb.verdict("intertwinePsi", fr.residuals.intertwinePsi, thresholds::intertwine);
  w.endObject();
  w.endObject();
}

struct VarietyData {
  VarietyPointSet boundary;
  VarietyPointSet interior;
  double maxUnimodularityGap = 0.0;
  double maxResidual1 = 0.0;
  double maxResidual2 = 0.0;
  bool hint = false;
};

VarietyData computeVariety(const BCLDilationBundle& bundle, const JobConfig& cfg,
                           bool withInterior) {
  VarietyData data;
  data.boundary = sampleBoundaryVariety(bundle.phi, bundle.psi, cfg.samples);
  for (const auto& pt : data.boundary.points) {
    data.maxUnimodularityGap = std::max(
        data.maxUnimodularityGap, std::max(std::abs(std::abs(pt.lambda1) - 1.0),
                                           std::abs(std::abs(pt.lambda2) - 1.0)));
    data.maxResidual1 = std::max(data.maxResidual1, pt.residual1);
    data.maxResidual2 = std::max(data.maxResidual2, pt.residual2);
  }
  if (withInterior) {
    data.interior = sampleInteriorVariety(bundle.phi, bundle.psi, GridSpec{});
  }
  data.hint = distinguishedHint(bundle.triple);
  return data;
}

void emitVariety(ReportBuilder& rb, const VarietyData& data, bool withPoints,
                 bool withInteriorPoints) {
  JsonWriter& w = rb.writer();
  w.key("variety").beginObject();
  w.key("boundaryCount").value(static_cast<int>(data.boundary.points.size()));
  w.key("interiorCount").value(static_cast<int>(data.interior.points.size()));
  w.key("interiorZeroEigenvalues").value(data.interior.zeroEigenvalueCount);
  w.key("maxUnimodularityGap").value(data.maxUnimodularityGap);
  w.key("maxResidual1").value(data.maxResidual1);
  w.key("maxResidual2").value(data.maxResidual2);
  w.key("distinguishedHint").value(data.hint);
  if (withPoints) {
    w.key("boundary").beginArray();
    for (const auto& pt : data.boundary.points) writePoint(w, pt);
    w.endArray();
  }
  if (withInteriorPoints) {
    w.key("interior").beginArray();
    for (const auto& pt : data.interior.points) writePoint(w, pt);
    w.endArray();
  }
  w.key("verdicts").beginObject();
  rb.verdict("unimodularity", data.maxUnimodularityGap, thresholds::unimodularity);
  rb.verdict("determinantResidual1", data.maxResidual1, thresholds::determinant);
  rb.verdict("determinantResidual2", data.maxResidual2, thresholds::determinant);
  w.endObject();
  w.endObject();
}

void emitVn(ReportBuilder& rb, const MatrixPair& pair, const VarietyPointSet& boundary,
            const std::vector<std::pair<std::string, BivariatePolynomial>>& polys) {
  JsonWriter& w = rb.writer();
  w.key("vn").beginObject();
  w.key("certificates").beginArray();
  double worstExcess = std::numeric_limits<double>::lowest();
  for (const auto& [text, poly] : polys) {
    VnCertificate cert = vnCertificate(poly, pair.t1, pair.t2, boundary);
    worstExcess = std::max(worstExcess, cert.lhs - cert.rhs);
    w.beginObject();
    w.key("poly").value(text);
    w.key("lhs").value(cert.lhs);
    w.key("rhs").value(cert.rhs);
    w.key("margin").value(cert.margin);
    w.key("slack").value(cert.slack);
    w.key("pass").value(cert.pass);
    w.endObject();
  }
  w.endArray();
  w.key("verdicts").beginObject();
  rb.verdict("vonNeumann", worstExcess, thresholds::vnSlack);
  w.endObject();
  w.endObject();
}

void writeOutput(const JobConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) fail(Errc::UsageError, "cannot open output path: " + cfg.out);
  out << text;
}

int runJob(JobConfig cfg) {
  if (cfg.format != "json" && cfg.format != "csv") {
    fail(Errc::UsageError, "format must be json or csv");
  }
  if (cfg.format == "csv" && cfg.command != "variety") {
    fail(Errc::UsageError, "csv output is only available for the variety command");
  }
  if (cfg.command == "vn" && cfg.polys.empty()) {
    fail(Errc::UsageError, "vn needs at least one --poly");
  }

  // parse polynomials before any heavy work so syntax errors exit early
  std::vector<std::pair<std::string, BivariatePolynomial>> polys;
  for (const auto& text : cfg.polys) polys.emplace_back(text, parsePolynomial(text));

  MatrixPair pair = loadPair(cfg);

  const bool needCheck = cfg.command == "check" || cfg.command == "all";
  const bool needBundle = cfg.command != "check";
  const bool needFactor = cfg.command == "factorize" || cfg.command == "all";
  const bool needVariety =
      cfg.command == "variety" || cfg.command == "vn" || cfg.command == "all";
  const bool needVn = cfg.command == "vn" || (cfg.command == "all" && !polys.empty());

  ReportBuilder rb;
  JsonWriter& w = rb.writer();
  w.beginObject();
  w.key("tool").value("bcldil");
  writeConfig(w, cfg);
  writeInput(w, pair);

  if (needCheck) {
    CheckData check = computeCheck(pair, cfg);
    emitCheck(rb, check, cfg);
    if (!rb.allPass()) {
      // the remaining stages require the predicates; stop at the verdict
      w.key("pass").value(false);
      w.endObject();
      writeOutput(cfg, w.take());
      return 2;
    }
  }

  if (needBundle) {
    BCLDilationBundle bundle = constructBCL(pair.t1, pair.t2, makeOptions(cfg));
    emitDilation(rb, bundle);

    if (needFactor) {
      FactorizationResult fr = pullBack(bundle);
      CompressionReport t41 = verifyFactorization(pair.t1, pair.t2, fr, bundle.pi);
      emitFactorization(rb, fr, t41);
    }

    if (needVariety) {
      const bool interiorPoints = cfg.command == "variety" && cfg.format == "json";
      VarietyData data = computeVariety(bundle, cfg, cfg.command != "vn");
      if (cfg.format == "csv") {
        // plot-ready boundary point cloud; verdicts still decide the exit code
        writeOutput(cfg, pointsToCsv(data.boundary));
        bool pass = data.maxUnimodularityGap <= thresholds::unimodularity &&
                    data.maxResidual1 <= thresholds::determinant &&
                    data.maxResidual2 <= thresholds::determinant;
        return pass ? 0 : 2;
      }
      emitVariety(rb, data, /*withPoints=*/true, interiorPoints);
      if (needVn) emitVn(rb, pair, data.boundary, polys);
    }
  }

  w.key("pass").value(rb.allPass());
  w.endObject();
  writeOutput(cfg, w.take());
  return rb.allPass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Isometric dilations, degree-one factor symbols, and determinantal "
               "variety certificates for commuting pairs of contraction matrices"};
  app.require_subcommand(1);

  JobConfig cfg;
  const char* names[] = {"check", "dilate", "factorize", "variety", "vn", "all"};
  const char* blurbs[] = {
      "predicates and spectral data of the input pair",
      "construct the isometric dilation and multiplier pencils",
      "dilate, then pull back the degree-one factor symbols",
      "dilate, then sample the determinantal variety",
      "dilate, sample the boundary, and certify polynomials",
      "run the whole pipeline",
  };
  for (int i = 0; i < 6; ++i) {
    CLI::App* sub = app.add_subcommand(names[i], blurbs[i]);
    sub->add_option("--input", cfg.input,
                    "pair file with keys T1, T2, or random:<dim> for a seeded pair")
        ->required();
    sub->add_option("--poly", cfg.polys, "polynomial in z1, z2 (repeatable)");
    sub->add_option("--tol", cfg.tol, "residual tolerance for predicates")
        ->check(CLI::PositiveNumber);
    sub->add_option("--purity-margin", cfg.purityMargin,
                    "required gap between the product spectral radius and 1")
        ->check(CLI::PositiveNumber);
    sub->add_option("--trunc-tol", cfg.truncationTol, "truncation tail tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--degree", cfg.degree, "truncation degree override (default: automatic)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--samples", cfg.samples, "boundary torus sample count")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for random:<dim> inputs");
    sub->add_option("--out", cfg.out, "output path (default: stdout)");
    sub->add_option("--format", cfg.format, "json or csv (csv: variety only)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  }

  for (int i = 0; i < 6; ++i) {
    if (app.get_subcommand(names[i])->parsed()) cfg.command = names[i];
  }

  try {
    return runJob(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
