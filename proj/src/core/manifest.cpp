#include "forge/core/manifest.hpp"

#include <fstream>

#include "forge/core/error.hpp"

namespace forge {

using nlohmann::json;

namespace {

json rect_to_json(const Rect& r) { return json::array({r.x, r.y, r.width, r.height}); }

Rect rect_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw Error(ErrorKind::ManifestUnreadable, "rect must be [x,y,w,h]");
  return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>(), j[3].get<int>()};
}

json point_to_json(const ScenePoint& p) { return {{"x", p.x}, {"y", p.y}, {"z", p.z}}; }

ScenePoint point_from_json(const json& j) {
  return {j.at("x").get<int>(), j.at("y").get<int>(), j.at("z").get<double>()};
}

json aux_to_json(const SampleAux& aux) {
  return std::visit(
      [](const auto& a) -> json {
        using T = std::decay_t<decltype(a)>;
        json j;
        j["corpus"] = a.corpus;
        if constexpr (std::is_same_v<T, ShuffleAux>) {
          j["variant"] = std::string(to_string(a.variant));
          j["rows"] = a.rows;
          j["cols"] = a.cols;
          j["permutation"] = a.permutation;
          j["mask_slot"] = a.mask_slot ? json(*a.mask_slot) : json(nullptr);
          j["trim"] = rect_to_json(a.trim);
        } else if constexpr (std::is_same_v<T, FlipAux>) {
          j["target"] = a.target;
          j["direction"] = static_cast<int>(a.direction);
          j["trim"] = rect_to_json(a.trim);
        } else if constexpr (std::is_same_v<T, InpaintAux>) {
          j["side"] = a.side;
          j["top"] = a.top;
          j["left"] = a.left;
          json options = json::array();
          for (const auto& o : a.options) options.push_back(o ? std::string(to_string(*o)) : std::string("gt"));
          j["options"] = options;
        } else if constexpr (std::is_same_v<T, DepthOrderAux>) {
          j["depth_source"] = a.depth_source;
          json regions = json::array();
          for (const auto& r : a.regions) regions.push_back({{"window", rect_to_json(r.window)}, {"label", r.label}});
          j["regions"] = regions;
        } else {
          j["depth_source"] = a.depth_source;
          j["anchor"] = point_to_json(a.anchor);
          j["query"] = point_to_json(a.query);
          j["theta"] = degrees(a.theta);
          j["delta_x"] = a.delta_x;
          j["delta_z"] = a.delta_z;
          j["gt_label"] = a.gt_label;
          j["anchor_label"] = a.anchor_label;
          j["options"] = a.options;
        }
        return j;
      },
      aux);
}

SampleAux aux_from_json(TaskKind task, const json& j) {
  const int corpus = j.at("corpus").get<int>();
  switch (task) {
    case TaskKind::ShuffleReorder: {
      ShuffleAux a;
      a.corpus = corpus;
      a.variant = shuffle_variant_from_string(j.at("variant").get<std::string>());
      a.rows = j.at("rows").get<int>();
      a.cols = j.at("cols").get<int>();
      a.permutation = j.at("permutation").get<std::vector<int>>();
      if (!j.at("mask_slot").is_null()) a.mask_slot = j.at("mask_slot").get<int>();
      a.trim = rect_from_json(j.at("trim"));
      return a;
    }
    case TaskKind::FlipRecognize: {
      FlipAux a;
      a.corpus = corpus;
      a.target = j.at("target").get<int>();
      const int d = j.at("direction").get<int>();
      if (d != 0 && d != 1) throw Error(ErrorKind::ManifestUnreadable, "flip direction must be 0 or 1");
      a.direction = static_cast<FlipDirection>(d);
      a.trim = rect_from_json(j.at("trim"));
      return a;
    }
    case TaskKind::CropInpaint: {
      InpaintAux a;
      a.corpus = corpus;
      a.side = j.at("side").get<int>();
      a.top = j.at("top").get<int>();
      a.left = j.at("left").get<int>();
      const auto options = j.at("options").get<std::vector<std::string>>();
      if (options.size() != 4) throw Error(ErrorKind::ManifestUnreadable, "inpaint needs 4 options");
      for (std::size_t i = 0; i < 4; ++i) {
        if (options[i] != "gt") a.options[i] = distractor_from_string(options[i]);
      }
      return a;
    }
    case TaskKind::DepthOrder: {
      DepthOrderAux a;
      a.corpus = corpus;
      a.depth_source = j.at("depth_source").get<std::string>();
      const json& regions = j.at("regions");
      if (!regions.is_array() || regions.size() != 3) throw Error(ErrorKind::ManifestUnreadable, "need 3 regions");
      for (std::size_t i = 0; i < 3; ++i) {
        a.regions[i].window = rect_from_json(regions[i].at("window"));
        a.regions[i].label = regions[i].at("label").get<int>();
      }
      return a;
    }
    case TaskKind::RelPosition: {
      RelPosAux a;
      a.corpus = corpus;
      a.depth_source = j.at("depth_source").get<std::string>();
      a.anchor = point_from_json(j.at("anchor"));
      a.query = point_from_json(j.at("query"));
      a.theta = orientation_from_degrees(j.at("theta").get<int>());
      a.delta_x = j.at("delta_x").get<double>();
      a.delta_z = j.at("delta_z").get<double>();
      a.gt_label = j.at("gt_label").get<std::string>();
      a.anchor_label = j.at("anchor_label").get<int>();
      const auto options = j.at("options").get<std::vector<std::string>>();
      if (options.size() != 4) throw Error(ErrorKind::ManifestUnreadable, "relpos needs 4 options");
      std::copy(options.begin(), options.end(), a.options.begin());
      return a;
    }
  }
  throw Error(ErrorKind::ManifestUnreadable, "unknown task");
}

json counts_to_json(const TaskCounts& counts) {
  json j = json::object();
  for (TaskKind t : kAllTasks) j[std::string(to_string(t))] = counts[task_index(t)];
  return j;
}

json mix_to_json(const ShuffleMix& mix) {
  json j = json::object();
  for (ShuffleVariant v : kAllShuffleVariants) j[std::string(to_string(v))] = mix[static_cast<std::size_t>(v)];
  return j;
}

}  // namespace

json to_json(const QASample& s) {
  json j;
  j["id"] = s.id;
  j["task"] = std::string(to_string(s.task));
  j["question"] = s.question;
  j["images"] = s.images;
  j["answer"] = s.answer.canonical();
  j["seed"] = {{"master", s.seed.master_seed}, {"index", s.seed.sample_index}};
  j["source_image"] = s.source_image;
  j["aux"] = aux_to_json(s.aux);
  return j;
}

QASample sample_from_json(const json& j) {
  const std::string id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>() : "<no id>";
  try {
    QASample s;
    s.id = j.at("id").get<std::string>();
    s.task = task_from_string(j.at("task").get<std::string>());
    s.question = j.at("question").get<std::string>();
    s.images = j.at("images").get<std::vector<std::string>>();
    s.answer = AnswerKey::parse(s.task, j.at("answer").get<std::string>());
    s.seed.master_seed = j.at("seed").at("master").get<std::uint64_t>();
    s.seed.sample_index = j.at("seed").at("index").get<std::uint64_t>();
    s.source_image = j.at("source_image").get<std::string>();
    s.aux = aux_from_json(s.task, j.at("aux"));
    validate(s);
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ManifestUnreadable, "record " + id + ": " + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ManifestUnreadable) throw;
    throw Error(ErrorKind::ManifestUnreadable, "record " + id + ": " + e.what());
  }
}

json to_json(const ManifestHeader& h) {
  json corpora = json::array();
  for (const auto& c : h.corpora) {
    corpora.push_back({{"root", c.root}, {"kind", c.kind == CorpusKind::Rgb ? "rgb" : "rgbd"}, {"weight", c.weight}});
  }
  return {{"schema_version", h.schema_version},
          {"master_seed", h.master_seed},
          {"corpus_fingerprint", h.corpus_fingerprint},
          {"corpora", corpora},
          {"counts", counts_to_json(h.counts)},
          {"shuffle_mix", mix_to_json(h.shuffle_mix)}};
}

ManifestHeader header_from_json(const json& j) {
  try {
    ManifestHeader h;
    h.schema_version = j.at("schema_version").get<int>();
    if (h.schema_version != kManifestSchemaVersion) {
      throw Error(ErrorKind::ManifestUnreadable, "unsupported schema version " + std::to_string(h.schema_version));
    }
    h.master_seed = j.at("master_seed").get<std::uint64_t>();
    h.corpus_fingerprint = j.at("corpus_fingerprint").get<std::string>();
    for (const auto& c : j.at("corpora")) {
      const std::string kind = c.at("kind").get<std::string>();
      h.corpora.push_back({c.at("root").get<std::string>(), kind == "rgbd" ? CorpusKind::Rgbd : CorpusKind::Rgb,
                           c.at("weight").get<double>()});
    }
    for (TaskKind t : kAllTasks) h.counts[task_index(t)] = j.at("counts").at(std::string(to_string(t))).get<std::uint64_t>();
    for (ShuffleVariant v : kAllShuffleVariants) {
      h.shuffle_mix[static_cast<std::size_t>(v)] = j.at("shuffle_mix").at(std::string(to_string(v))).get<std::uint64_t>();
    }
    return h;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ManifestUnreadable, std::string("header: ") + e.what());
  }
}

std::string serialize_record(const QASample& sample) { return to_json(sample).dump(); }

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << json{{"header", to_json(manifest.header)}}.dump() << '\n';
  for (const auto& record : manifest.records) out << serialize_record(record) << '\n';
  if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

Manifest read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ManifestUnreadable, "cannot open " + path.string());
  Manifest manifest;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::ManifestUnreadable, "empty manifest " + path.string());
  try {
    manifest.header = header_from_json(json::parse(line).at("header"));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ManifestUnreadable, std::string("header: ") + e.what());
  }
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::ManifestUnreadable, "line " + std::to_string(line_no) + ": " + e.what());
    }
    manifest.records.push_back(sample_from_json(j));
  }
  std::uint64_t expected = 0;
  for (auto c : manifest.header.counts) expected += c;
  if (expected != manifest.records.size()) {
    throw Error(ErrorKind::ManifestUnreadable, "header declares " + std::to_string(expected) + " records, found " +
                                                   std::to_string(manifest.records.size()));
  }
  return manifest;
}

void recount(ManifestHeader& header, const std::vector<QASample>& records) {
  header.counts = {};
  header.shuffle_mix = {};
  for (const auto& r : records) {
    ++header.counts[task_index(r.task)];
    if (const auto* a = std::get_if<ShuffleAux>(&r.aux)) ++header.shuffle_mix[static_cast<std::size_t>(a->variant)];
  }
}

std::filesystem::path image_path(const std::filesystem::path& manifest_path, const std::string& relative) {
  return manifest_path.parent_path() / relative;
}

}  // namespace forge
