// include/artic/nn/checkpoint.h

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

#ifndef ARTIC_NN_CHECKPOINT_H_
#define ARTIC_NN_CHECKPOINT_H_

#include <torch/torch.h>

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "artic/config.h"
#include "artic/nn/inverter.h"
#include "json.hpp"

namespace artic {

inline constexpr char kCheckpointFormat[] = "artic-ckpt/1";

// On disk: the format tag and a newline, the header length as a little-endian
// uint64, the JSON header (meta plus a tensor table), then the raw tensor
// bytes back to back. Only float32, float64 and int64 tensors are stored.
struct Checkpoint {
  nlohmann::json meta = nlohmann::json::object();
  std::vector<std::pair<std::string, torch::Tensor>> tensors;

  std::map<std::string, torch::Tensor> TensorMap() const;
};

std::string SerializeCheckpoint(const Checkpoint &ckpt);
Checkpoint ParseCheckpoint(const std::string &bytes, const std::string &source);
void SaveCheckpoint(const std::filesystem::path &path, const Checkpoint &ckpt);
Checkpoint LoadCheckpoint(const std::filesystem::path &path);

// Parameters and buffers as "<prefix>.<name>".
void AppendModuleState(const std::string &prefix, const torch::nn::Module &module,
                       Checkpoint *ckpt);
// Copies every parameter and buffer of |module| from |ckpt|; kCheckpoint on a
// missing name or a shape mismatch.
void LoadModuleState(const Checkpoint &ckpt, const std::string &prefix,
                     torch::nn::Module *module);

// Rebuilds the inverter stored by the trainer (config under meta.config).
RunConfig CheckpointConfig(const Checkpoint &ckpt);
InverterModel LoadInverter(const Checkpoint &ckpt);

}  // namespace artic

#endif  // ARTIC_NN_CHECKPOINT_H_
