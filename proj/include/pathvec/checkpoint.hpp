#pragma once

// Binary model container: magic + version, the model configuration and
// vocabulary hashes, every parameter tensor as name/shape/data, and a
// trailing checksum over the whole preceding byte stream. Loading verifies
// the checksum and, when a vocabulary is supplied, its hashes.

#include <string>

#include "pathvec/model.hpp"

namespace pathvec {

void save_checkpoint(const Model& model, const std::string& path);

// Throws ChecksumMismatch on a corrupted file and VocabMismatch when
// `expected` is given and any vocabulary hash differs.
Model load_checkpoint(const std::string& path, const VocabSet* expected = nullptr);

}  // namespace pathvec
