#pragma once

#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace bevocc {

/// Dense row-major tensor of rank 1..4. The workhorse container of the
/// neural-network stack; scalar type is templated so the same layers can
/// train in float and be gradient-checked in double.
template <typename T>
class Tensor {
public:
    Tensor() = default;

    explicit Tensor(std::vector<int> shape) : shape_(std::move(shape)) {
        for (int d : shape_) {
            if (d <= 0) throw std::invalid_argument("Tensor: non-positive dimension");
        }
        data_.assign(numel(), T{});
    }

    Tensor(std::initializer_list<int> shape) : Tensor(std::vector<int>(shape)) {}

    static Tensor zeros(std::vector<int> shape) { return Tensor(std::move(shape)); }

    static Tensor full(std::vector<int> shape, T value) {
        Tensor t(std::move(shape));
        t.fill(value);
        return t;
    }

    const std::vector<int>& shape() const { return shape_; }
    int rank() const { return static_cast<int>(shape_.size()); }
    int dim(int i) const { return shape_[static_cast<size_t>(i)]; }

    std::int64_t numel() const {
        std::int64_t n = 1;
        for (int d : shape_) n *= d;
        return shape_.empty() ? 0 : n;
    }

    bool empty() const { return data_.empty(); }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    T& operator[](std::int64_t i) { return data_[static_cast<size_t>(i)]; }
    const T& operator[](std::int64_t i) const { return data_[static_cast<size_t>(i)]; }

    // Rank-checked multi-index accessors; hot loops should index raw data().
    T& operator()(int a) { return data_[static_cast<size_t>(a)]; }
    const T& operator()(int a) const { return data_[static_cast<size_t>(a)]; }

    T& operator()(int a, int b) { return data_[static_cast<size_t>(a) * shape_[1] + b]; }
    const T& operator()(int a, int b) const { return data_[static_cast<size_t>(a) * shape_[1] + b]; }

    T& operator()(int a, int b, int c) {
        return data_[(static_cast<size_t>(a) * shape_[1] + b) * shape_[2] + c];
    }
    const T& operator()(int a, int b, int c) const {
        return data_[(static_cast<size_t>(a) * shape_[1] + b) * shape_[2] + c];
    }

    T& operator()(int a, int b, int c, int d) {
        return data_[((static_cast<size_t>(a) * shape_[1] + b) * shape_[2] + c) * shape_[3] + d];
    }
    const T& operator()(int a, int b, int c, int d) const {
        return data_[((static_cast<size_t>(a) * shape_[1] + b) * shape_[2] + c) * shape_[3] + d];
    }

    void fill(T value) { std::fill(data_.begin(), data_.end(), value); }

    void zero() { fill(T{}); }

    bool same_shape(const Tensor& other) const { return shape_ == other.shape_; }

    Tensor& operator+=(const Tensor& other) {
        require_same_shape(other, "operator+=");
        for (size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
        return *this;
    }

    Tensor& operator-=(const Tensor& other) {
        require_same_shape(other, "operator-=");
        for (size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
        return *this;
    }

    Tensor& operator*=(T s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    /// this += alpha * other
    void axpy(T alpha, const Tensor& other) {
        require_same_shape(other, "axpy");
        for (size_t i = 0; i < data_.size(); ++i) data_[i] += alpha * other.data_[i];
    }

    template <typename U>
    Tensor<U> cast() const {
        Tensor<U> out(shape_);
        for (std::int64_t i = 0; i < numel(); ++i) out[i] = static_cast<U>(data_[static_cast<size_t>(i)]);
        return out;
    }

    std::string shape_str() const {
        std::string s = "(";
        for (size_t i = 0; i < shape_.size(); ++i) {
            if (i) s += ", ";
            s += std::to_string(shape_[i]);
        }
        return s + ")";
    }

private:
    void require_same_shape(const Tensor& other, const char* op) const {
        if (!same_shape(other)) {
            throw std::invalid_argument(std::string("Tensor::") + op + ": shape mismatch " +
                                        shape_str() + " vs " + other.shape_str());
        }
    }

    std::vector<int> shape_;
    std::vector<T> data_;
};

using TensorF = Tensor<float>;
using TensorD = Tensor<double>;

}  // namespace bevocc
