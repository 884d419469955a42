// stl_sentry/marks.hpp
//
// Compile-time companions to the stl-sentry linter: container wrappers that
// raise custom diagnostics for the same constructs the linter flags, plus
// the I_KNOW_VECTOR_BOOL believe-me tag that disables the boolean-vector
// warning at a single instantiation.
//
// Everything lives in namespace stl_sentry; nothing in namespace std is
// touched.  Header-only, C++03-compatible, zero runtime cost: the wrappers
// add no data members and no virtual functions.

#ifndef STL_SENTRY_MARKS_HPP
#define STL_SENTRY_MARKS_HPP

#include <cstddef>
#include <deque>
#include <functional>
#include <list>
#include <map>
#include <memory>
#include <queue>
#include <set>
#include <stack>
#include <vector>

namespace stl_sentry {

// Instantiating this template is the whole warning mechanism: the dummy
// parameter is never used, so the compiler reports it and quotes the
// payload type in the instantiation trace.  Optimizers drop the empty call.
template <class T>
inline void warning( T t ) { }

struct VECTOR_BOOL_IS_IN_USE { };
struct I_KNOW_VECTOR_BOOL { };
struct DeprecatedClass { };

// ---------------------------------------------------------------------------
// Deprecation marker.  Add `public Deprecated<Self>` to a class's base list;
// constructing the class then surfaces `DEPRECATED = Self` in the trace.
// ---------------------------------------------------------------------------

template <class DEPRECATED>
struct Deprecated
{
  Deprecated()
  {
    warning( DeprecatedClass() );
  }
};

// ---------------------------------------------------------------------------
// Boolean vector machinery.
// ---------------------------------------------------------------------------

namespace detail {

// The believe-me tag may land in the allocator slot (and the default Info
// is int); treat both as "use the default allocator".
template <class A>
struct alloc_or_default { typedef A type; };
template <>
struct alloc_or_default<int> { typedef std::allocator<bool> type; };
template <>
struct alloc_or_default<I_KNOW_VECTOR_BOOL> { typedef std::allocator<bool> type; };

}  // namespace detail

// The plain packed boolean vector, warning-free; the specializations below
// decide whether instantiation deserves a diagnostic.
template <class Alloc>
class bool_vector_base
  : public std::vector<bool, typename detail::alloc_or_default<Alloc>::type>
{
  typedef std::vector<bool, typename detail::alloc_or_default<Alloc>::type> base_type;

public:
  bool_vector_base() : base_type() { }

  template <class InputIterator>
  bool_vector_base( InputIterator first, InputIterator last )
    : base_type( first, last ) { }

  bool_vector_base( std::size_t n, const bool& value )
    : base_type( n, value ) { }

  bool_vector_base( const bool_vector_base& rhs ) : base_type( rhs ) { }
};

// General form: one trailing informational parameter beyond the standard
// two, defaulted so existing code compiles unchanged.
template <class T, class Alloc = std::allocator<T>, class Info = int>
class vector : public std::vector<T, Alloc>
{
  typedef std::vector<T, Alloc> base_type;

public:
  vector() : base_type() { }

  template <class InputIterator>
  vector( InputIterator first, InputIterator last )
    : base_type( first, last ) { }

  vector( std::size_t n, const T& value = T() ) : base_type( n, value ) { }

  vector( const vector& rhs ) : base_type( rhs ) { }
};

// Boolean instantiation without a believe-me tag: every constructor raises
// the custom warning.
template <class Alloc, class Info>
class vector<bool, Alloc, Info> : public bool_vector_base<Alloc>
{
  typedef bool_vector_base<Alloc> base_type;

public:
  vector() : base_type()
  {
    warning( VECTOR_BOOL_IS_IN_USE() );
  }

  template <class InputIterator>
  vector( InputIterator first, InputIterator last )
    : base_type( first, last )
  {
    warning( VECTOR_BOOL_IS_IN_USE() );
  }

  vector( std::size_t n, const bool& value = bool() )
    : base_type( n, value )
  {
    warning( VECTOR_BOOL_IS_IN_USE() );
  }

  vector( const vector& rhs ) : base_type( rhs )
  {
    warning( VECTOR_BOOL_IS_IN_USE() );
  }
};

// The tag in either trailing parameter keeps the instantiation silent.
template <class Alloc>
class vector<bool, I_KNOW_VECTOR_BOOL, Alloc>
  : public bool_vector_base<Alloc> { };

template <class Alloc>
class vector<bool, Alloc, I_KNOW_VECTOR_BOOL>
  : public bool_vector_base<Alloc> { };

// ---------------------------------------------------------------------------
// Containers of auto pointers: declared, never defined, so defining such an
// object fails with an incomplete-type error.  One declaration per element
// position of every covered container.
// ---------------------------------------------------------------------------

template <class T, class Alloc, class Info>
class vector< std::auto_ptr<T>, Alloc, Info>;

template <class T, class Alloc = std::allocator<T> >
class list : public std::list<T, Alloc>
{
public:
  list() { }
};

template <class T, class Alloc>
class list< std::auto_ptr<T>, Alloc>;

template <class T, class Alloc = std::allocator<T> >
class deque : public std::deque<T, Alloc>
{
public:
  deque() { }
};

template <class T, class Alloc>
class deque< std::auto_ptr<T>, Alloc>;

template <class Key, class Compare = std::less<Key>,
          class Alloc = std::allocator<Key> >
class set : public std::set<Key, Compare, Alloc>
{
public:
  set() { }
};

template <class T, class Compare, class Alloc>
class set< std::auto_ptr<T>, Compare, Alloc>;

template <class Key, class Compare = std::less<Key>,
          class Alloc = std::allocator<Key> >
class multiset : public std::multiset<Key, Compare, Alloc>
{
public:
  multiset() { }
};

template <class T, class Compare, class Alloc>
class multiset< std::auto_ptr<T>, Compare, Alloc>;

template <class Key, class T, class Compare = std::less<Key>,
          class Alloc = std::allocator<std::pair<const Key, T> > >
class map : public std::map<Key, T, Compare, Alloc>
{
public:
  map() { }
};

template <class K, class T, class Compare, class Alloc>
class map< std::auto_ptr<K>, T, Compare, Alloc>;

template <class Key, class V, class Compare, class Alloc>
class map< Key, std::auto_ptr<V>, Compare, Alloc>;

template <class Key, class T, class Compare = std::less<Key>,
          class Alloc = std::allocator<std::pair<const Key, T> > >
class multimap : public std::multimap<Key, T, Compare, Alloc>
{
public:
  multimap() { }
};

template <class K, class T, class Compare, class Alloc>
class multimap< std::auto_ptr<K>, T, Compare, Alloc>;

template <class Key, class V, class Compare, class Alloc>
class multimap< Key, std::auto_ptr<V>, Compare, Alloc>;

template <class T, class Container = std::deque<T> >
class stack : public std::stack<T, Container>
{
public:
  stack() { }
};

template <class T, class Container>
class stack< std::auto_ptr<T>, Container>;

template <class T, class Container = std::deque<T> >
class queue : public std::queue<T, Container>
{
public:
  queue() { }
};

template <class T, class Container>
class queue< std::auto_ptr<T>, Container>;

template <class T, class Container = std::vector<T>,
          class Compare = std::less<typename Container::value_type> >
class priority_queue : public std::priority_queue<T, Container, Compare>
{
public:
  priority_queue() { }
};

template <class T, class Container, class Compare>
class priority_queue< std::auto_ptr<T>, Container, Compare>;

}  // namespace stl_sentry

#endif  // STL_SENTRY_MARKS_HPP
