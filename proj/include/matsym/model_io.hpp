#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "matsym/model.hpp"

namespace matsym {

// Model JSON format (see README "Model files"):
//   name         string
//   dims         [int, ...]
//   domain       [int, ...] | {"default": [int, ...], "cells": [{"cell": [coords], "values": [int, ...]}]}
//   constraints  [{"kind": ..., ...}]; cells are referenced by coordinate arrays
//   symmetry     "all" | "none" | per-dimension list of ("all" | "none" | [[index, ...], ...])
//
// Parse errors raise BadModelFile; semantic errors raise the model-building errors.
MatrixModel model_from_json(const nlohmann::json& doc);
nlohmann::json model_to_json(const MatrixModel& model);

MatrixModel read_model(const std::filesystem::path& path);
void write_model(const MatrixModel& model, const std::filesystem::path& path);

nlohmann::json constraint_to_json(const ConstraintTerm& term, const MatrixModel& model);

}  // namespace matsym
