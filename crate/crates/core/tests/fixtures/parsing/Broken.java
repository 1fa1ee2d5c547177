public class Broken {
    @Test public void testSomething( {
        widget.run(;
}
