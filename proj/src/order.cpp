#include "logdiv/order.hpp"

#include <algorithm>
#include <sstream>

namespace logdiv {

MonomialOrder MonomialOrder::lex() {
  MonomialOrder o;
  o.kind_ = Kind::Lex;
  return o;
}

MonomialOrder MonomialOrder::degrevlex() {
  MonomialOrder o;
  o.kind_ = Kind::DegRevLex;
  return o;
}

MonomialOrder MonomialOrder::weighted(std::vector<int> weights) {
  for (int w : weights)
    if (w <= 0) throw Error("weighted order requires strictly positive weights");
  MonomialOrder o;
  o.kind_ = Kind::Weighted;
  o.weights_ = std::move(weights);
  return o;
}

MonomialOrder MonomialOrder::block(std::vector<std::size_t> block1_vars,
                                   MonomialOrder inner1, MonomialOrder inner2) {
  MonomialOrder o;
  o.kind_ = Kind::Block;
  o.block1_ = std::move(block1_vars);
  std::sort(o.block1_.begin(), o.block1_.end());
  o.inner1_ = std::make_shared<const MonomialOrder>(std::move(inner1));
  o.inner2_ = std::make_shared<const MonomialOrder>(std::move(inner2));
  return o;
}

namespace {

int cmp_lex(const Exp& a, const Exp& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

int cmp_degrevlex(const Exp& a, const Exp& b) {
  int da = exp_total_degree(a), db = exp_total_degree(b);
  if (da != db) return da < db ? -1 : 1;
  // Equal degree: last nonzero entry of a-b negative  =>  a larger.
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Exp& a, const Exp& b) const {
  switch (kind_) {
    case Kind::Lex:
      return cmp_lex(a, b);
    case Kind::DegRevLex:
      return cmp_degrevlex(a, b);
    case Kind::Weighted: {
      if (weights_.size() != a.size())
        throw Error("weight list length does not match variable count");
      long long wa = 0, wb = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        wa += static_cast<long long>(weights_[i]) * a[i];
        wb += static_cast<long long>(weights_[i]) * b[i];
      }
      if (wa != wb) return wa < wb ? -1 : 1;
      return cmp_degrevlex(a, b);
    }
    case Kind::Block: {
      Exp a1(a.size(), 0), b1(a.size(), 0);
      Exp a2 = a, b2 = b;
      for (std::size_t i : block1_) {
        a1[i] = a[i];
        b1[i] = b[i];
        a2[i] = 0;
        b2[i] = 0;
      }
      int c = inner1_->compare(a1, b1);
      if (c != 0) return c;
      return inner2_->compare(a2, b2);
    }
  }
  return 0;
}

std::string MonomialOrder::describe() const {
  switch (kind_) {
    case Kind::Lex:
      return "lex";
    case Kind::DegRevLex:
      return "degrevlex";
    case Kind::Weighted: {
      std::ostringstream out;
      out << "weighted(";
      for (std::size_t i = 0; i < weights_.size(); ++i)
        out << (i ? "," : "") << weights_[i];
      out << ")";
      return out.str();
    }
    case Kind::Block: {
      std::ostringstream out;
      out << "block([";
      for (std::size_t i = 0; i < block1_.size(); ++i)
        out << (i ? "," : "") << block1_[i];
      out << "]," << inner1_->describe() << "," << inner2_->describe() << ")";
      return out.str();
    }
  }
  return "?";
}

std::pair<Exp, Rat> leading_term(const Poly& p, const MonomialOrder& ord) {
  if (p.is_zero()) throw Error("leading term of zero polynomial");
  const std::pair<const Exp, Rat>* best = nullptr;
  for (const auto& t : p.terms()) {
    if (!best || ord.less(best->first, t.first)) best = &t;
  }
  return {best->first, best->second};
}

}  // namespace logdiv
