// src/nn/checkpoint.cc

// Copyright 2026  The artic Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "artic/nn/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "artic/corpus.h"
#include "artic/error.h"

namespace artic {

static_assert(std::endian::native == std::endian::little,
              "checkpoints are little-endian");

namespace {

using nlohmann::json;

std::string DtypeName(torch::ScalarType t) {
  switch (t) {
    case torch::kFloat32:
      return "f32";
    case torch::kFloat64:
      return "f64";
    case torch::kInt64:
      return "i64";
    default:
      Fail(ErrorCode::kCheckpoint,
           std::string("checkpoint: unsupported dtype ") + c10::toString(t));
  }
}

torch::ScalarType DtypeFromName(const std::string &name) {
  if (name == "f32") return torch::kFloat32;
  if (name == "f64") return torch::kFloat64;
  if (name == "i64") return torch::kInt64;
  Fail(ErrorCode::kCheckpoint, "checkpoint: unknown dtype '" + name + "'");
}

}  // namespace

std::map<std::string, torch::Tensor> Checkpoint::TensorMap() const {
  std::map<std::string, torch::Tensor> m;
  for (const auto &[name, t] : tensors) m.emplace(name, t);
  return m;
}

std::string SerializeCheckpoint(const Checkpoint &ckpt) {
  json table = json::array();
  std::string blob;
  for (const auto &[name, tensor] : ckpt.tensors) {
    const torch::Tensor t = tensor.detach().cpu().contiguous();
    const size_t bytes = t.numel() * t.element_size();
    table.push_back({{"name", name},
                     {"dtype", DtypeName(t.scalar_type())},
                     {"shape", t.sizes().vec()},
                     {"offset", blob.size()},
                     {"bytes", bytes}});
    blob.append(static_cast<const char *>(t.data_ptr()), bytes);
  }
  json header = {{"format", kCheckpointFormat}, {"meta", ckpt.meta}, {"tensors", table}};
  const std::string h = header.dump();
  const uint64_t len = h.size();

  std::string out = std::string(kCheckpointFormat) + "\n";
  out.append(reinterpret_cast<const char *>(&len), sizeof(len));
  out += h;
  out += blob;
  return out;
}

Checkpoint ParseCheckpoint(const std::string &bytes, const std::string &source) {
  const std::string tag = std::string(kCheckpointFormat) + "\n";
  if (bytes.compare(0, tag.size(), tag) != 0)
    Fail(ErrorCode::kCheckpoint,
         source + ": not an " + kCheckpointFormat + " checkpoint");
  uint64_t len = 0;
  if (bytes.size() < tag.size() + sizeof(len))
    Fail(ErrorCode::kCheckpoint, source + ": truncated checkpoint header");
  std::memcpy(&len, bytes.data() + tag.size(), sizeof(len));
  const size_t data_start = tag.size() + sizeof(len) + len;
  if (bytes.size() < data_start)
    Fail(ErrorCode::kCheckpoint, source + ": truncated checkpoint header");

  json header;
  try {
    header = json::parse(bytes.substr(tag.size() + sizeof(len), len));
  } catch (const json::exception &e) {
    Fail(ErrorCode::kCheckpoint, source + ": bad checkpoint header: " + e.what());
  }
  if (header.value("format", "") != kCheckpointFormat)
    Fail(ErrorCode::kCheckpoint, source + ": unsupported checkpoint format");

  Checkpoint ckpt;
  ckpt.meta = header.at("meta");
  for (const json &entry : header.at("tensors")) {
    const auto shape = entry.at("shape").get<std::vector<int64_t>>();
    const size_t offset = entry.at("offset").get<size_t>();
    const size_t nbytes = entry.at("bytes").get<size_t>();
    const std::string name = entry.at("name").get<std::string>();
    if (data_start + offset + nbytes > bytes.size())
      Fail(ErrorCode::kCheckpoint,
           source + ": tensor " + name + " runs past end of file");
    torch::Tensor t = torch::empty(shape, DtypeFromName(entry.at("dtype")));
    if (static_cast<size_t>(t.numel() * t.element_size()) != nbytes)
      Fail(ErrorCode::kCheckpoint,
           source + ": tensor " + name + " has inconsistent size");
    std::memcpy(t.data_ptr(), bytes.data() + data_start + offset, nbytes);
    ckpt.tensors.emplace_back(name, t);
  }
  return ckpt;
}

void SaveCheckpoint(const std::filesystem::path &path, const Checkpoint &ckpt) {
  WriteFileAtomic(path, SerializeCheckpoint(ckpt));
}

Checkpoint LoadCheckpoint(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kCheckpoint, "cannot open checkpoint " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseCheckpoint(ss.str(), path.string());
}

void AppendModuleState(const std::string &prefix, const torch::nn::Module &module,
                       Checkpoint *ckpt) {
  for (const auto &item : module.named_parameters())
    ckpt->tensors.emplace_back(prefix + "." + item.key(), item.value());
  for (const auto &item : module.named_buffers())
    ckpt->tensors.emplace_back(prefix + "." + item.key(), item.value());
}

void LoadModuleState(const Checkpoint &ckpt, const std::string &prefix,
                     torch::nn::Module *module) {
  const auto tensors = ckpt.TensorMap();
  torch::NoGradGuard no_grad;
  auto copy = [&](const std::string &name, torch::Tensor &dst) {
    auto it = tensors.find(prefix + "." + name);
    if (it == tensors.end())
      Fail(ErrorCode::kCheckpoint, "checkpoint has no tensor " + prefix + "." + name);
    if (!it->second.sizes().equals(dst.sizes()))
      Fail(ErrorCode::kCheckpoint,
           "checkpoint tensor " + prefix + "." + name + " has the wrong shape");
    dst.copy_(it->second);
  };
  for (auto &item : module->named_parameters()) copy(item.key(), item.value());
  for (auto &item : module->named_buffers()) copy(item.key(), item.value());
}

RunConfig CheckpointConfig(const Checkpoint &ckpt) {
  if (!ckpt.meta.contains("config"))
    Fail(ErrorCode::kCheckpoint, "checkpoint has no config record");
  return RunConfigFromJson(ckpt.meta.at("config"));
}

InverterModel LoadInverter(const Checkpoint &ckpt) {
  InverterModel model(CheckpointConfig(ckpt).inverter);
  LoadModuleState(ckpt, "inverter", model.get());
  model->eval();
  return model;
}

}  // namespace artic
