/**
 *  Copyright (C) 2026 GrainLedger contributors.
 *  SPDX-License-Identifier: Apache-2.0
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
#pragma once

#include "grainledger/ledger/types.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace grainledger::ledger
{
/// `<u32 big-endian length><canonical JSON block bytes>`.
std::string encode_block_record(const Block& block);

struct BlockFileContents
{
    std::vector<Block> blocks;
    std::vector<std::string> records;  // raw JSON bytes per block
    /// Index of the first record that could not be framed, parsed, or is not
    /// in canonical form, with the reason.
    std::optional<std::pair<std::size_t, std::string>> error;
};

/// Reads every well-formed record up to the first damaged one.
BlockFileContents read_block_file(const std::filesystem::path& path);

/// Append-only chain of blocks for one channel, optionally mirrored to a block file.
class BlockStore
{
public:
    BlockStore() = default;
    /// Loads an existing block file (or starts empty) and appends to it.
    /// Throws Error(BadRecord) when the file is damaged.
    explicit BlockStore(std::filesystem::path file);

    BlockStore(BlockStore&&) = default;
    BlockStore& operator=(BlockStore&&) = default;

    /// Throws BadHeight / BadPrevHash / BadRecord when `block` cannot extend the tip.
    void check_append(const Block& block) const;
    void append(Block block);

    bool empty() const { return m_blocks.empty(); }
    std::uint64_t size() const { return m_blocks.size(); }
    /// Height of the next block to append.
    std::uint64_t next_height() const { return m_blocks.size(); }
    const Block& tip() const { return m_blocks.back(); }
    Digest tip_hash() const { return m_blocks.empty() ? Digest::zero() : m_blocks.back().hash; }
    const Block& at(std::uint64_t height) const { return m_blocks.at(height); }
    std::span<const Block> blocks() const { return m_blocks; }
    const std::optional<std::filesystem::path>& file() const { return m_file; }

private:
    std::vector<Block> m_blocks;
    std::optional<std::filesystem::path> m_file;
    std::ofstream m_out;
};

}  // namespace grainledger::ledger
