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
#include "grainledger/ledger/block_store.hpp"
#include "grainledger/common/error.hpp"

namespace grainledger::ledger
{
std::string encode_block_record(const Block& block)
{
    std::string body = canonicalize(block.to_document());
    if (body.size() > 0xffffffffu)
        fail(ErrorCode::BadRecord, "block record too large");
    auto n = static_cast<std::uint32_t>(body.size());
    std::string out;
    out.reserve(body.size() + 4);
    out.push_back(static_cast<char>((n >> 24) & 0xff));
    out.push_back(static_cast<char>((n >> 16) & 0xff));
    out.push_back(static_cast<char>((n >> 8) & 0xff));
    out.push_back(static_cast<char>(n & 0xff));
    out += body;
    return out;
}

BlockFileContents read_block_file(const std::filesystem::path& path)
{
    BlockFileContents contents;
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return contents;
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    while (pos < data.size())
    {
        std::size_t index = contents.blocks.size();
        if (data.size() - pos < 4)
        {
            contents.error = {index, "truncated length prefix"};
            break;
        }
        std::uint32_t n = 0;
        for (int i = 0; i < 4; ++i)
            n = (n << 8) | static_cast<std::uint8_t>(data[pos + i]);
        pos += 4;
        if (data.size() - pos < n)
        {
            contents.error = {index, "record length exceeds file"};
            break;
        }
        std::string record = data.substr(pos, n);
        pos += n;
        try
        {
            Document doc = parse_document(record);
            if (canonicalize(doc) != record)
            {
                contents.error = {index, "record is not in canonical form"};
                break;
            }
            Block block = Block::from_document(doc);
            if (canonicalize(block.to_document()) != record)
            {
                contents.error = {index, "record does not round-trip"};
                break;
            }
            contents.blocks.push_back(std::move(block));
            contents.records.push_back(std::move(record));
        }
        catch (const Error& e)
        {
            contents.error = {index, e.what()};
            break;
        }
    }
    return contents;
}

BlockStore::BlockStore(std::filesystem::path file) : m_file(std::move(file))
{
    if (std::filesystem::exists(*m_file))
    {
        BlockFileContents contents = read_block_file(*m_file);
        if (contents.error)
            fail(ErrorCode::BadRecord, m_file->string() + ": record " +
                                           std::to_string(contents.error->first) + ": " +
                                           contents.error->second);
        for (auto& b : contents.blocks)
        {
            check_append(b);
            m_blocks.push_back(std::move(b));
        }
    }
    else if (m_file->has_parent_path())
    {
        std::filesystem::create_directories(m_file->parent_path());
    }
    m_out.open(*m_file, std::ios::binary | std::ios::app);
    if (!m_out)
        fail(ErrorCode::Io, "cannot open block file " + m_file->string());
}

void BlockStore::check_append(const Block& block) const
{
    if (block.header.height != next_height())
        fail(ErrorCode::BadHeight, "expected height " + std::to_string(next_height()) + ", got " +
                                       std::to_string(block.header.height));
    if (block.header.prev_hash != tip_hash())
        fail(ErrorCode::BadPrevHash, "prev_hash " + block.header.prev_hash.hex() +
                                         " does not match tip " + tip_hash().hex());
    if (block.hash != block.header.digest())
        fail(ErrorCode::BadRecord, "stored hash does not match header at height " +
                                       std::to_string(block.header.height));
}

void BlockStore::append(Block block)
{
    check_append(block);
    if (m_file)
    {
        m_out << encode_block_record(block);
        m_out.flush();
        if (!m_out)
            fail(ErrorCode::Io, "write failed on " + m_file->string());
    }
    m_blocks.push_back(std::move(block));
}

}  // namespace grainledger::ledger
