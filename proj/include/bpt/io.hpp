#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "bpt/common.hpp"

// Little-endian binary framing for index files. Every component writes its
// payload into its own Writer; the container prefixes each payload with its
// byte length so readers can validate component boundaries.
namespace bpt::io {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <typename T>
concept Scalar = std::is_integral_v<T> || std::is_same_v<T, bool>;

class Writer {
 public:
  template <Scalar T>
  void put(T value) {
    using U = std::make_unsigned_t<std::conditional_t<std::is_same_v<T, bool>, std::uint8_t, T>>;
    auto u = static_cast<U>(value);
    for (std::size_t k = 0; k < sizeof(U); ++k) {
      bytes_.push_back(static_cast<std::byte>(u & 0xFFu));
      if constexpr (sizeof(U) > 1) u = static_cast<U>(u >> 8);
    }
  }

  template <Scalar T>
  void put_vector(std::span<const T> values) {
    put<std::uint64_t>(values.size());
    if constexpr (std::endian::native == std::endian::little && !std::is_same_v<T, bool>) {
      const auto* raw = reinterpret_cast<const std::byte*>(values.data());
      bytes_.insert(bytes_.end(), raw, raw + values.size_bytes());
    } else {
      for (const T& v : values) put(v);
    }
  }

  template <Scalar T>
  void put_vector(const std::vector<T>& values) {
    put_vector(std::span<const T>(values));
  }

  void put_bytes(std::span<const std::byte> raw) { bytes_.insert(bytes_.end(), raw.begin(), raw.end()); }

  /// Appends `section` as a length-prefixed component.
  void put_section(const Writer& section) {
    put<std::uint64_t>(section.bytes_.size());
    put_bytes(section.bytes_);
  }

  [[nodiscard]] const std::vector<std::byte>& bytes() const noexcept { return bytes_; }

 private:
  std::vector<std::byte> bytes_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::byte> bytes) : bytes_(bytes) {}

  template <Scalar T>
  T get() {
    using U = std::make_unsigned_t<std::conditional_t<std::is_same_v<T, bool>, std::uint8_t, T>>;
    need(sizeof(U));
    U u = 0;
    for (std::size_t k = 0; k < sizeof(U); ++k) {
      u = static_cast<U>(u | (static_cast<U>(std::to_integer<std::uint8_t>(bytes_[pos_ + k])) << (8 * k)));
    }
    pos_ += sizeof(U);
    if constexpr (std::is_same_v<T, bool>) {
      return u != 0;
    } else {
      return static_cast<T>(u);
    }
  }

  template <Scalar T>
  std::vector<T> get_vector() {
    const auto count = get<std::uint64_t>();
    if (count > (bytes_.size() - pos_) / sizeof(T)) throw format_error("vector length exceeds payload");
    std::vector<T> out(static_cast<std::size_t>(count));
    if constexpr (std::endian::native == std::endian::little && !std::is_same_v<T, bool>) {
      std::memcpy(out.data(), bytes_.data() + pos_, out.size() * sizeof(T));
      pos_ += out.size() * sizeof(T);
    } else {
      for (auto& v : out) v = get<T>();
    }
    return out;
  }

  /// Reads one length-prefixed component and returns a reader over it.
  Reader section() {
    const auto length = get<std::uint64_t>();
    need(length);
    Reader sub(bytes_.subspan(pos_, static_cast<std::size_t>(length)));
    pos_ += static_cast<std::size_t>(length);
    return sub;
  }

  std::span<const std::byte> take(std::size_t length) {
    need(length);
    auto out = bytes_.subspan(pos_, length);
    pos_ += length;
    return out;
  }

  [[nodiscard]] bool at_end() const noexcept { return pos_ == bytes_.size(); }

  void expect_end(const char* component) const {
    if (!at_end()) throw format_error(std::string("trailing bytes in component ") + component);
  }

 private:
  void need(std::uint64_t length) const {
    if (length > bytes_.size() - pos_) throw format_error("truncated index data");
  }

  std::span<const std::byte> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace bpt::io
