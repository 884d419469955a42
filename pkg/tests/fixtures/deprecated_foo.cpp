class Foo: public Deprecated<Foo>
{
  // ...
public:
  Foo( int a, int b)
  {
    // ...
  } 
};

Foo f( 1, 2 );
